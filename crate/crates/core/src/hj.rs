//! From a coprime pair `(n, k)` to the word `T^{n_1} S T^{n_2} S ... S T^{n_g}`.
//!
//! The exponents are the negative (Hirzebruch–Jung) continued fraction of
//! `n/k`: `n/k = n_1 - 1/(n_2 - 1/(... - 1/n_g))` with every `n_i >= 2`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sigma::SigmaSubgroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub n: i64,
    pub k: i64,
    pub g: usize,
    pub entries: Vec<i64>,
}

fn check_pair(n: i64, k: i64) -> Result<()> {
    if k < 1 || n <= k {
        return Err(Error::InvalidArgument(format!("need n > k >= 1, got n = {n}, k = {k}")));
    }
    if n.gcd(&k) != 1 {
        return Err(Error::InvalidArgument(format!("n = {n} and k = {k} are not coprime")));
    }
    Ok(())
}

/// Negative continued fraction of `n/k`: `n_1 = ⌈n/k⌉`, then recurse on `k / (n_1 k - n)`.
pub fn hj_expand(n: i64, k: i64) -> Result<Expansion> {
    check_pair(n, k)?;
    let (mut num, mut den) = (n, k);
    let mut entries = Vec::new();
    while den != 0 {
        let a = Integer::div_ceil(&num, &den);
        entries.push(a);
        let rem = a * den - num;
        num = den;
        den = rem;
    }
    Ok(Expansion {
        n,
        k,
        g: entries.len(),
        entries,
    })
}

impl Expansion {
    /// Builds an expansion from its entries, recovering `(n, k)` by evaluating the word.
    pub fn from_entries(entries: Vec<i64>) -> Result<Expansion> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty expansion".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidArgument(format!("entry {bad} < 2")));
        }
        let (n, k) = evaluate_word(&entries);
        Ok(Expansion {
            n,
            k,
            g: entries.len(),
            entries,
        })
    }

    /// `Σ` generated by `(i, i+1)` for every `i` with `n_i = 2`.
    pub fn sigma(&self) -> SigmaSubgroup {
        let gens = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 2)
            .map(|(i, _)| i + 1);
        SigmaSubgroup::new(self.g + 1, gens).expect("generator indices lie in 1..=g")
    }

    pub fn word(&self) -> Mat2 {
        word_matrix(&self.entries)
    }

    pub fn line_bundle_recipe(&self) -> LineBundleRecipe {
        LineBundleRecipe {
            exponents: self.entries.clone(),
            corrections: (1..self.g)
                .map(|j| DiagonalCorrection {
                    first: j,
                    second: j + 1,
                })
                .collect(),
        }
    }
}

pub fn sigma_from_expansion(e: &Expansion) -> SigmaSubgroup {
    e.sigma()
}

/// An integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Mat2 = Mat2 {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn t_pow(m: i64) -> Mat2 {
        Mat2 { a: 1, b: m, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Fractional linear action on `num/den` (in homogeneous coordinates).
    pub fn act(&self, num: i64, den: i64) -> (i64, i64) {
        (self.a * num + self.b * den, self.c * num + self.d * den)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `T^{n_1} S T^{n_2} S ... S T^{n_g}`.
pub fn word_matrix(entries: &[i64]) -> Mat2 {
    let mut m = Mat2::IDENTITY;
    for (i, &e) in entries.iter().enumerate() {
        if i > 0 {
            m = m * Mat2::S;
        }
        m = m * Mat2::t_pow(e);
    }
    m
}

/// The word applied to `0/1`, as a reduced fraction with positive denominator.
fn evaluate_word(entries: &[i64]) -> (i64, i64) {
    let (num, den) = word_matrix(entries).act(0, 1);
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Evaluates the word of `e` on `0/1` and returns the reduced fraction `(numerator, denominator)`.
pub fn verify_word(e: &Expansion) -> Result<(i64, i64)> {
    if e.entries.is_empty() {
        return Err(Error::InvalidArgument("empty expansion".into()));
    }
    Ok(evaluate_word(&e.entries))
}

/// The factor `pr_{j,j+1}^*(L ⊠ L)(-Δ')` attached to adjacent coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCorrection {
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for DiagonalCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pr_{{{},{}}}^*(L⊠L)(-Δ')", self.first, self.second)
    }
}

/// Symbolic description of the line bundle `L_{n/k}` on `E^g`; no geometry is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleRecipe {
    pub exponents: Vec<i64>,
    pub corrections: Vec<DiagonalCorrection>,
}

impl fmt::Display for LineBundleRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ext: Vec<String> = self.exponents.iter().map(|e| format!("L^{e}")).collect();
        write!(f, "({})", ext.join(" ⊠ "))?;
        if !self.corrections.is_empty() {
            let corr: Vec<String> = self.corrections.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", corr.join(" ⊗ "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn expansion_examples() {
        assert_eq!(hj_expand(3, 1).unwrap().entries, vec![3]);
        assert_eq!(hj_expand(5, 2).unwrap().entries, vec![3, 2]);
        let e = hj_expand(7, 3).unwrap();
        assert_eq!((e.g, e.entries.clone()), (3, vec![3, 2, 2]));
        assert_eq!(hj_expand(2, 1).unwrap().entries, vec![2]);
    }

    #[test]
    fn invalid_pairs() {
        for (n, k) in [(4, 2), (3, 0), (3, 3), (2, 5), (5, -1), (6, 4)] {
            assert!(hj_expand(n, k).is_err(), "({n},{k})");
        }
    }

    #[test]
    fn word_examples() {
        assert_eq!(word_matrix(&[3]), Mat2 { a: 1, b: 3, c: 0, d: 1 });
        assert_eq!(verify_word(&Expansion::from_entries(vec![3]).unwrap()).unwrap(), (3, 1));
        assert_eq!(
            verify_word(&Expansion::from_entries(vec![3, 2]).unwrap()).unwrap(),
            (5, 2)
        );
        for g in 1..=12 {
            let e = Expansion::from_entries(vec![2; g]).unwrap();
            assert_eq!(verify_word(&e).unwrap(), (g as i64 + 1, g as i64));
            assert_eq!(hj_expand(g as i64 + 1, g as i64).unwrap().entries, vec![2; g]);
        }
    }

    #[test]
    fn round_trip_and_determinant() {
        for n in 2..=50 {
            for k in 1..n {
                if n.gcd(&k) != 1 {
                    continue;
                }
                let e = hj_expand(n, k).unwrap();
                assert!(e.entries.iter().all(|&x| x >= 2));
                assert_eq!(verify_word(&e).unwrap(), (n, k));
                assert_eq!(e.word().det(), 1);
            }
        }
    }

    /// Every word with entries in [2, 6] and length <= 5 evaluates to a
    /// distinct fraction, and the expansion of that fraction is the word.
    #[test]
    fn expansion_is_unique() {
        let mut seen: HashMap<(i64, i64), Vec<i64>> = HashMap::new();
        let mut frontier: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &frontier {
                for e in 2..=6 {
                    let mut w2 = w.clone();
                    w2.push(e);
                    let frac = evaluate_word(&w2);
                    if let Some(prev) = seen.insert(frac, w2.clone()) {
                        panic!("{prev:?} and {w2:?} both give {frac:?}");
                    }
                    assert_eq!(hj_expand(frac.0, frac.1).unwrap().entries, w2);
                    next.push(w2);
                }
            }
            frontier = next;
        }
        assert_eq!(seen.len(), 5 + 25 + 125 + 625 + 3125);
    }

    #[test]
    fn sigma_examples() {
        let s = hj_expand(3, 1).unwrap().sigma();
        assert_eq!((s.g_plus_1, s.generators.len()), (2, 0));
        let s = hj_expand(7, 3).unwrap().sigma();
        assert_eq!(s.g_plus_1, 4);
        assert_eq!(s.generators.iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        let s = Expansion::from_entries(vec![2, 2]).unwrap().sigma();
        assert_eq!(s, SigmaSubgroup::full(3).unwrap());
    }

    #[test]
    fn recipe_examples() {
        let r = hj_expand(3, 1).unwrap().line_bundle_recipe();
        assert_eq!(r.exponents, vec![3]);
        assert!(r.corrections.is_empty());
        let r = hj_expand(5, 2).unwrap().line_bundle_recipe();
        assert_eq!(r.exponents, vec![3, 2]);
        assert_eq!(r.corrections, vec![DiagonalCorrection { first: 1, second: 2 }]);
        assert_eq!(r.to_string(), "(L^3 ⊠ L^2)(pr_{1,2}^*(L⊠L)(-Δ'))");
        let r = Expansion::from_entries(vec![2, 2, 2]).unwrap().line_bundle_recipe();
        assert_eq!(r.corrections.len(), 2);
    }
}
