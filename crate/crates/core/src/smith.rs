//! Smith normal form over the integers.
//!
//! `smith_normal_form(A)` returns unimodular `U`, `V` and diagonal `D` with
//! `D = U * A * V` and `D[i][i] | D[i+1][i+1]`, all diagonal entries `>= 0`.

use serde::{Deserialize, Serialize};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) {
        for j in 0..self.cols {
            let x = self.get(src, j);
            self.data[dst * self.cols + j] += q * x;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) {
        for i in 0..self.rows {
            let x = self.get(i, src);
            self.data[i * self.cols + dst] += q * x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] *= -1;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] *= -1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `D`, including zeros and ones.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_nonzero(&d, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = d.get(i, t).div_euclid(d.get(t, t));
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                dirty |= d.get(i, t) != 0;
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_euclid(d.get(t, t));
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                dirty |= d.get(t, j) != 0;
            }
            if dirty {
                // a smaller remainder exists in the pivot row or column
                let cand = min_nonzero(&d, t..m, t..t + 1)
                    .into_iter()
                    .chain(min_nonzero(&d, t..t + 1, t..n))
                    .min_by_key(|&(i, j)| d.get(i, j).abs())
                    .unwrap();
                d.swap_rows(t, cand.0);
                u.swap_rows(t, cand.0);
                d.swap_cols(t, cand.1);
                v.swap_cols(t, cand.1);
                continue;
            }
            let p = d.get(t, t);
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d.get(i, j) % p != 0));
            match bad {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn min_nonzero(d: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    rows.flat_map(|i| cols.clone().map(move |j| (i, j)))
        .filter(|&(i, j)| d.get(i, j) != 0)
        .min_by_key(|&(i, j)| d.get(i, j).abs())
}

/// `M ∈ GL_s(Z)` with `(i_1, ..., i_s) · M = (gcd, 0, ..., 0)`, by column Euclid steps.
pub fn unimodular_reduction(values: &[i64]) -> IntMatrix {
    let s = values.len();
    let mut row = values.to_vec();
    let mut m = IntMatrix::identity(s);
    for j in 1..s {
        while row[j] != 0 {
            let q = row[0].div_euclid(row[j]);
            row[0] -= q * row[j];
            m.add_col(0, j, -q);
            row.swap(0, j);
            m.swap_cols(0, j);
        }
    }
    if s > 0 && row[0] < 0 {
        m.negate_col(0);
    }
    m
}
