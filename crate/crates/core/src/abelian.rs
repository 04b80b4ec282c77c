//! Finite abelian groups by invariant factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::smith::{smith_normal_form, IntMatrix};

/// `Z/d_1 ⊕ ... ⊕ Z/d_m` with `d_1 | d_2 | ... | d_m`, every `d_i >= 2`.
/// The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants::default()
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `⊕ Z/c_j` (zeros not allowed).
    pub fn from_cyclic(orders: &[u64]) -> AbelianInvariants {
        assert!(orders.iter().all(|&c| c > 0), "cyclic orders must be positive");
        let diag: Vec<i64> = orders.iter().map(|&c| c as i64).collect();
        Self::from_relation_matrix(&IntMatrix::diagonal(&diag))
    }

    /// The cokernel `Z^rows / (columns of A)`, which must be finite.
    pub fn from_relation_matrix(a: &IntMatrix) -> AbelianInvariants {
        assert!(
            a.rows() <= a.cols(),
            "relation matrix has fewer relations than generators"
        );
        let diag = smith_normal_form(a).diagonal();
        assert!(diag.iter().all(|&x| x != 0), "presented group is infinite");
        AbelianInvariants {
            factors: diag.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect(),
        }
    }

    /// Reconstructs the invariant factors of a finite abelian group from the
    /// orders of all of its elements.
    ///
    /// For each prime `p`, `|G[p^k]| = p^{c_k}` and the number of cyclic
    /// `p`-primary summands of order at least `p^k` is `c_k - c_{k-1}`.
    pub fn from_element_orders(orders: &[u64]) -> AbelianInvariants {
        let n = orders.len() as u64;
        let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for p in prime_factors(n) {
            let mut prev_log = 0u32;
            let mut k = 1u32;
            // exponents[j] = number of summands of order >= p^(j+1)
            let mut at_least = Vec::new();
            loop {
                let pk = p.pow(k);
                let killed = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let log = ilog_exact(killed, p);
                if log == prev_log {
                    break;
                }
                at_least.push((log - prev_log) as usize);
                prev_log = log;
                k += 1;
            }
            // convert "number of summands of order >= p^j" into a list of p-powers, largest last
            let count = at_least.first().copied().unwrap_or(0);
            let mut powers = vec![1u64; count];
            for (j, &c) in at_least.iter().enumerate() {
                for slot in powers.iter_mut().rev().take(c) {
                    *slot = p.pow(j as u32 + 1);
                }
            }
            primary.insert(p, powers);
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in primary.values() {
            for (slot, &q) in factors.iter_mut().rev().zip(powers.iter().rev()) {
                *slot *= q;
            }
        }
        AbelianInvariants { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `G ⊕ G`: each factor with doubled multiplicity.
    pub fn squared(&self) -> AbelianInvariants {
        AbelianInvariants {
            factors: self.factors.iter().flat_map(|&f| [f, f]).collect(),
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog_exact(x: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut y = x;
    while y > 1 {
        assert_eq!(
            y % p,
            0,
            "{x} is not a power of {p}: element orders do not come from a group"
        );
        y /= p;
        e += 1;
    }
    e
}
