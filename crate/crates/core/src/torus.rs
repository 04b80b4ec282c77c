//! The elliptic curve `E` modeled by its torsion group `(Q/Z)^2`.
//!
//! Every point is stored as a pair of reduced fractions in `[0, 1)`, so
//! structural equality is group equality and all arithmetic is exact.
//! `E[m]` is the set of points whose coordinates both have denominators
//! dividing `m`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Q/Z`: `num / den` with `0 <= num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    num: u64,
    den: u64,
}

impl Residue {
    pub const ZERO: Residue = Residue { num: 0, den: 1 };

    /// Reduces `num / den` modulo 1. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Residue {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 {
            (-(num as i128), -(den as i128))
        } else {
            (num as i128, den as i128)
        };
        Self::from_wide(num, den as u128)
    }

    fn from_wide(num: i128, den: u128) -> Residue {
        let m = num.rem_euclid(den as i128) as u128;
        let g = m.gcd(&den);
        let (num, den) = (m / g, den / g);
        Residue {
            num: u64::try_from(num).expect("numerator exceeds u64"),
            den: u64::try_from(den).expect("denominator exceeds u64"),
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn mul_int(self, m: i64) -> Residue {
        Self::from_wide(self.num as i128 * m as i128, self.den as u128)
    }

    /// The `r` solutions of `r * x = self`, in increasing order.
    fn divide(self, r: u64) -> impl Iterator<Item = Residue> {
        let den = self.den as u128 * r as u128;
        (0..r).map(move |a| Self::from_wide((self.num as u128 + a as u128 * self.den as u128) as i128, den))
    }
}

impl Default for Residue {
    fn default() -> Self {
        Residue::ZERO
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        let l = self.den.lcm(&rhs.den) as u128;
        let a = self.num as u128 * (l / self.den as u128);
        let b = rhs.num as u128 * (l / rhs.den as u128);
        Self::from_wide((a + b) as i128, l)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        if self.num == 0 {
            self
        } else {
            Residue {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Ord for Residue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Residue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Residue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Residue> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| bad())?,
                d.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        if d == 0 {
            return Err(bad());
        }
        Ok(Residue::new(n, d))
    }
}

/// A point of `E`, i.e. an element of `(Q/Z)^2`.
///
/// The derived order is lexicographic on `(u, v)` with each coordinate
/// compared as an exact rational. Multisets of points are sorted by it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub u: Residue,
    pub v: Residue,
}

impl TorusPoint {
    pub const ZERO: TorusPoint = TorusPoint {
        u: Residue::ZERO,
        v: Residue::ZERO,
    };

    pub fn new(u: Residue, v: Residue) -> TorusPoint {
        TorusPoint { u, v }
    }

    /// The point `(a/b, c/d)`.
    pub fn from_fracs(a: i64, b: i64, c: i64, d: i64) -> TorusPoint {
        TorusPoint {
            u: Residue::new(a, b),
            v: Residue::new(c, d),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn scalar_mul(&self, m: i64) -> TorusPoint {
        TorusPoint {
            u: self.u.mul_int(m),
            v: self.v.mul_int(m),
        }
    }

    /// Smallest `m >= 1` with `m * self = 0`.
    pub fn order(&self) -> u64 {
        self.u.den.lcm(&self.v.den)
    }

    pub fn is_torsion(&self, m: u64) -> bool {
        m != 0 && m.is_multiple_of(self.order())
    }

    /// All `r^2` points `q` with `r * q = self`, lexicographic in the lift indices.
    pub fn division_preimages(&self, r: i64) -> Result<Vec<TorusPoint>> {
        if r <= 0 {
            return Err(Error::InvalidArgument(format!("division by r = {r}, need r >= 1")));
        }
        let us: Vec<Residue> = self.u.divide(r as u64).collect();
        let vs: Vec<Residue> = self.v.divide(r as u64).collect();
        Ok(us
            .iter()
            .flat_map(|&u| vs.iter().map(move |&v| TorusPoint { u, v }))
            .collect())
    }
}

/// `E[m]` as the `m^2` points `(a/m, b/m)`, lexicographic in `(a, b)`.
pub fn torsion_subgroup(m: i64) -> Result<Vec<TorusPoint>> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!("torsion level m = {m}, need m >= 1")));
    }
    Ok((0..m)
        .flat_map(|a| (0..m).map(move |b| TorusPoint::from_fracs(a, m, b, m)))
        .collect())
}

/// A uniformly random point of `E[n]` drawn from `rng`.
pub fn random_torsion_point_with<R: Rng + ?Sized>(rng: &mut R, n: i64) -> TorusPoint {
    assert!(n >= 1, "torsion level must be positive");
    TorusPoint::from_fracs(rng.gen_range(0..n), n, rng.gen_range(0..n), n)
}

/// A uniformly random point of `E[n]`, reproducible from `seed`.
pub fn random_torsion_point(n: i64, seed: u64) -> Result<TorusPoint> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("torsion level N = {n}, need N >= 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_torsion_point_with(&mut rng, n))
}

pub fn sum_points<'a, I: IntoIterator<Item = &'a TorusPoint>>(points: I) -> TorusPoint {
    points.into_iter().fold(TorusPoint::ZERO, |acc, p| acc + *p)
}

impl Add for TorusPoint {
    type Output = TorusPoint;
    fn add(self, rhs: TorusPoint) -> TorusPoint {
        TorusPoint {
            u: self.u + rhs.u,
            v: self.v + rhs.v,
        }
    }
}

impl AddAssign for TorusPoint {
    fn add_assign(&mut self, rhs: TorusPoint) {
        *self = *self + rhs;
    }
}

impl Neg for TorusPoint {
    type Output = TorusPoint;
    fn neg(self) -> TorusPoint {
        TorusPoint { u: -self.u, v: -self.v }
    }
}

impl Sub for TorusPoint {
    type Output = TorusPoint;
    fn sub(self, rhs: TorusPoint) -> TorusPoint {
        self + (-rhs)
    }
}

impl SubAssign for TorusPoint {
    fn sub_assign(&mut self, rhs: TorusPoint) {
        *self = *self - rhs;
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    /// Parses `"a/b,c/d"`; coordinates are reduced mod 1.
    fn from_str(s: &str) -> Result<TorusPoint> {
        let (u, v) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `a/b,c/d`, got `{s}`")))?;
        Ok(TorusPoint {
            u: u.parse()?,
            v: v.parse()?,
        })
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a `;`-separated list of points, e.g. `"1/2,0/1;0/1,1/3"`.
pub fn parse_point_list(s: &str) -> Result<Vec<TorusPoint>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: i64, b: i64, c: i64, d: i64) -> TorusPoint {
        TorusPoint::from_fracs(a, b, c, d)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(TorusPoint::ZERO + p(1, 2, 1, 3), p(1, 2, 1, 3));
        assert_eq!(p(1, 2, 0, 1) + p(1, 2, 0, 1), TorusPoint::ZERO);
        assert_eq!(p(2, 3, 1, 4) + p(2, 3, 3, 4), p(1, 3, 0, 1));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(-TorusPoint::ZERO, TorusPoint::ZERO);
        assert_eq!(-p(1, 3, 0, 1), p(2, 3, 0, 1));
        assert_eq!(-p(1, 2, 1, 2), p(1, 2, 1, 2));
    }

    #[test]
    fn scalar_and_order() {
        assert_eq!(p(1, 3, 2, 3).scalar_mul(3), TorusPoint::ZERO);
        assert_eq!(p(1, 8, 0, 1).scalar_mul(2), p(1, 4, 0, 1));
        assert_eq!(TorusPoint::ZERO.order(), 1);
        assert_eq!(p(1, 2, 1, 3).order(), 6);
        assert_eq!(p(1, 4, 1, 2).order(), 4);
    }

    #[test]
    fn normalization() {
        assert_eq!(p(-1, 3, 5, 4), p(2, 3, 1, 4));
        assert_eq!(p(2, 4, 3, -6), p(1, 2, 1, 2));
        assert_eq!(p(7, 7, 0, 5), TorusPoint::ZERO);
    }

    #[test]
    fn torsion_enumeration() {
        assert_eq!(torsion_subgroup(1).unwrap(), vec![TorusPoint::ZERO]);
        let e2 = torsion_subgroup(2).unwrap();
        assert_eq!(e2, vec![TorusPoint::ZERO, p(0, 1, 1, 2), p(1, 2, 0, 1), p(1, 2, 1, 2)]);
        for m in 1..=12 {
            let pts = torsion_subgroup(m).unwrap();
            assert_eq!(pts.len() as i64, m * m);
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(torsion_subgroup(0).is_err());
        assert!(torsion_subgroup(-3).is_err());
    }

    #[test]
    fn division_examples() {
        let mut half = TorusPoint::ZERO.division_preimages(2).unwrap();
        half.sort();
        assert_eq!(half, torsion_subgroup(2).unwrap());
        let mut q = p(1, 2, 0, 1).division_preimages(2).unwrap();
        q.sort();
        assert_eq!(q, vec![p(1, 4, 0, 1), p(1, 4, 1, 2), p(3, 4, 0, 1), p(3, 4, 1, 2)]);
        assert!(TorusPoint::ZERO.division_preimages(0).is_err());
    }

    #[test]
    fn random_points_are_reproducible() {
        for seed in 0..10 {
            assert_eq!(random_torsion_point(1, seed).unwrap(), TorusPoint::ZERO);
        }
        let a = random_torsion_point(6, 42).unwrap();
        assert_eq!(a, random_torsion_point(6, 42).unwrap());
        assert!(a.is_torsion(6));
        assert!(random_torsion_point(0, 1).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..10_000 {
            seen.insert(random_torsion_point_with(&mut rng, 2));
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn large_denominators_do_not_overflow() {
        let big = (1i64 << 31) - 1;
        let a = p(big - 1, big, 1, big - 2);
        let b = p(3, big - 2, big - 5, big);
        let s = a + b;
        assert_eq!(s - b, a);
        assert_eq!(a.scalar_mul(big), p(0, 1, big, big - 2));
        assert_eq!(a.scalar_mul(-big).scalar_mul(-1), a.scalar_mul(big));
    }

    #[test]
    fn group_axioms_on_small_torsion() {
        for m in 1..=6 {
            let pts = torsion_subgroup(m).unwrap();
            let set: std::collections::HashSet<_> = pts.iter().copied().collect();
            for &a in &pts {
                assert_eq!(a + TorusPoint::ZERO, a);
                assert_eq!(a + (-a), TorusPoint::ZERO);
                assert!(set.contains(&-a));
                for &b in &pts {
                    assert_eq!(a + b, b + a);
                    assert!(set.contains(&(a + b)));
                }
            }
            // associativity on a sub-sample keeps this O(m^4)
            for &a in pts.iter().step_by(3) {
                for &b in &pts {
                    for &c in pts.iter().step_by(5) {
                        assert_eq!((a + b) + c, a + (b + c));
                    }
                }
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let a = p(2, 3, 0, 1);
        assert_eq!(a.to_string(), "2/3,0/1");
        assert_eq!("2/3,0/1".parse::<TorusPoint>().unwrap(), a);
        assert_eq!("-1/3, 3".parse::<TorusPoint>().unwrap(), a);
        assert!("1/0,0".parse::<TorusPoint>().is_err());
        assert!("1/2".parse::<TorusPoint>().is_err());
        let list = parse_point_list("1/2,0/1;0/1,1/3").unwrap();
        assert_eq!(list, vec![p(1, 2, 0, 1), p(0, 1, 1, 3)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "\"2/3,0/1\"");
        assert_eq!(serde_json::from_str::<TorusPoint>(&json).unwrap(), a);
    }

    fn arb_point() -> impl Strategy<Value = TorusPoint> {
        (1i64..=60, 1i64..=60)
            .prop_flat_map(|(m, n)| (0..m, Just(m), 0..n, Just(n)))
            .prop_map(|(a, m, b, n)| TorusPoint::from_fracs(a, m, b, n))
    }

    proptest! {
        #[test]
        fn associativity(a in arb_point(), b in arb_point(), c in arb_point()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
        }

        #[test]
        fn scalar_mul_is_repeated_addition(a in arb_point(), m in 0i64..=20) {
            let mut acc = TorusPoint::ZERO;
            for _ in 0..m {
                acc += a;
            }
            prop_assert_eq!(a.scalar_mul(m), acc);
            prop_assert_eq!(a.scalar_mul(-1), -a);
        }

        #[test]
        fn order_is_minimal(a in arb_point()) {
            let n = a.order();
            prop_assert!(a.scalar_mul(n as i64).is_zero());
            for m in 1..n {
                prop_assert!(!a.scalar_mul(m as i64).is_zero());
            }
        }

        #[test]
        fn division_preimages_contract(a in arb_point(), r in 1i64..=6) {
            let pre = a.division_preimages(r).unwrap();
            prop_assert_eq!(pre.len() as i64, r * r);
            let distinct: std::collections::HashSet<_> = pre.iter().collect();
            prop_assert_eq!(distinct.len(), pre.len());
            for q in pre {
                prop_assert_eq!(q.scalar_mul(r), a);
            }
        }
    }
}
