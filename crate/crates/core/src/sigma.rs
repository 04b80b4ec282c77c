//! Subgroups of `Sigma_{g+1}` generated by simple transpositions `(i, i+1)`.
//!
//! Such a subgroup is a product of full symmetric groups on consecutive
//! blocks of indices. Indices are 1-based throughout, matching the usual
//! notation `{1, ..., g+1}`.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::TorusPoint;

/// Bound on the number of permutations [`enumerate_orbit`] will generate.
pub const ORBIT_GUARD: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaSubgroup {
    pub g_plus_1: usize,
    pub generators: BTreeSet<usize>,
}

impl SigmaSubgroup {
    pub fn new<I: IntoIterator<Item = usize>>(g_plus_1: usize, generators: I) -> Result<SigmaSubgroup> {
        if g_plus_1 == 0 {
            return Err(Error::InvalidArgument("g+1 must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for i in generators {
            if i == 0 || i >= g_plus_1 {
                return Err(Error::InvalidArgument(format!(
                    "generator {i} out of range 1..={}",
                    g_plus_1 - 1
                )));
            }
            if !set.insert(i) {
                return Err(Error::InvalidArgument(format!("duplicate generator {i}")));
            }
        }
        Ok(SigmaSubgroup {
            g_plus_1,
            generators: set,
        })
    }

    pub fn trivial(g_plus_1: usize) -> Result<SigmaSubgroup> {
        Self::new(g_plus_1, [])
    }

    /// The full symmetric group on `{1, ..., g+1}`.
    pub fn full(g_plus_1: usize) -> Result<SigmaSubgroup> {
        Self::new(g_plus_1, 1..g_plus_1)
    }

    /// The subgroup whose non-trivial orbits are consecutive blocks of the given sizes,
    /// with `fixed_after` fixed points appended at the end.
    pub fn from_block_sizes(sizes: &[usize], fixed_after: usize) -> Result<SigmaSubgroup> {
        let mut gens = Vec::new();
        let mut start = 1;
        for &len in sizes {
            if len < 2 {
                return Err(Error::InvalidArgument(format!("block size {len} < 2")));
            }
            gens.extend(start..start + len - 1);
            start += len;
        }
        Self::new(start - 1 + fixed_after, gens)
    }

    pub fn g(&self) -> usize {
        self.g_plus_1 - 1
    }

    /// Orbits of `{1, ..., g+1}`: connected components of the path graph
    /// whose edges are the generators.
    pub fn orbit_decomposition(&self) -> OrbitData {
        let mut fixed = Vec::new();
        let mut blocks = Vec::new();
        let mut i = 1;
        while i <= self.g_plus_1 {
            let start = i;
            while self.generators.contains(&i) {
                i += 1;
            }
            if i == start {
                fixed.push(i);
            } else {
                blocks.push(Block {
                    start,
                    len: i - start + 1,
                });
            }
            i += 1;
        }
        OrbitData::from_parts(self.g_plus_1, fixed, blocks)
    }
}

/// A block `{start, ..., start + len - 1}` of consecutive indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }

    /// 0-based positions into a `(g+1)`-tuple.
    pub fn positions(&self) -> std::ops::Range<usize> {
        self.start - 1..self.start - 1 + self.len
    }
}

/// The partition `{1, ..., g+1} = J ⊔ I_1 ⊔ ... ⊔ I_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitData {
    pub g_plus_1: usize,
    /// `J`, the fixed indices, sorted.
    pub fixed: Vec<usize>,
    /// `I_1, ..., I_s`, sorted by start.
    pub blocks: Vec<Block>,
    /// `i_1, ..., i_s`.
    pub sizes: Vec<usize>,
    pub s: usize,
    /// gcd of the block sizes, 1 when there are no blocks.
    pub d: usize,
}

impl OrbitData {
    fn from_parts(g_plus_1: usize, fixed: Vec<usize>, blocks: Vec<Block>) -> OrbitData {
        let sizes: Vec<usize> = blocks.iter().map(|b| b.len).collect();
        let d = if sizes.is_empty() {
            1
        } else {
            sizes.iter().fold(0, |acc, &x| acc.gcd(&x))
        };
        OrbitData {
            g_plus_1,
            fixed,
            s: blocks.len(),
            blocks,
            sizes,
            d,
        }
    }

    /// Convenience constructor: blocks of the given sizes followed by `fixed_after` fixed points.
    pub fn from_block_sizes(sizes: &[usize], fixed_after: usize) -> Result<OrbitData> {
        Ok(SigmaSubgroup::from_block_sizes(sizes, fixed_after)?.orbit_decomposition())
    }

    pub fn g(&self) -> usize {
        self.g_plus_1 - 1
    }

    pub fn j_empty(&self) -> bool {
        self.fixed.is_empty()
    }

    /// `i_α / d`, the coefficients of the sheet map `(1/d)·Θ`.
    pub fn reduced_sizes(&self) -> Vec<usize> {
        self.sizes.iter().map(|&i| i / self.d).collect()
    }

    /// `∏ i_α!`, the order of Σ.
    pub fn group_order(&self) -> u128 {
        self.sizes.iter().map(|&i| (1..=i as u128).product::<u128>()).product()
    }

    fn check_len(&self, x: &[TorusPoint]) -> Result<()> {
        if x.len() != self.g_plus_1 {
            return Err(Error::Shape(format!(
                "tuple of length {} for g+1 = {}",
                x.len(),
                self.g_plus_1
            )));
        }
        Ok(())
    }

    /// Sorts the entries of `x` inside every block; entries at fixed indices are untouched.
    pub fn canonicalize(&self, x: &[TorusPoint]) -> Result<Vec<TorusPoint>> {
        self.check_len(x)?;
        let mut out = x.to_vec();
        for b in &self.blocks {
            out[b.positions()].sort();
        }
        Ok(out)
    }

    /// The full Σ-orbit of `x`, by applying every element of Σ.
    pub fn enumerate_orbit(&self, x: &[TorusPoint]) -> Result<HashSet<Vec<TorusPoint>>> {
        self.check_len(x)?;
        let order = self.group_order();
        if order > ORBIT_GUARD {
            return Err(Error::GuardExceeded {
                needed: order,
                limit: ORBIT_GUARD,
            });
        }
        let per_block: Vec<Vec<Vec<usize>>> = self
            .blocks
            .iter()
            .map(|b| b.positions().permutations(b.len).collect())
            .collect();
        let mut orbit = HashSet::new();
        for choice in per_block.iter().multi_cartesian_product() {
            let mut y = x.to_vec();
            for (b, perm) in self.blocks.iter().zip(choice) {
                for (dst, &src) in b.positions().zip(perm.iter()) {
                    y[dst] = x[src];
                }
            }
            orbit.insert(y);
        }
        if self.blocks.is_empty() {
            orbit.insert(x.to_vec());
        }
        Ok(orbit)
    }
}

/// `(z_1, ..., z_g) ↦ (z_1, z_2 - z_1, ..., z_g - z_{g-1}, -z_g)`, landing in `E_0^{g+1}`.
pub fn epsilon_embed(z: &[TorusPoint]) -> Result<Vec<TorusPoint>> {
    if z.is_empty() {
        return Err(Error::InvalidArgument("epsilon needs g >= 1".into()));
    }
    let mut out = Vec::with_capacity(z.len() + 1);
    let mut prev = TorusPoint::ZERO;
    for &zi in z {
        out.push(zi - prev);
        prev = zi;
    }
    out.push(-prev);
    Ok(out)
}

/// Inverse of [`epsilon_embed`] on `E_0^{g+1}`: partial sums of the first `g` coordinates.
pub fn epsilon_inverse(x: &[TorusPoint]) -> Result<Vec<TorusPoint>> {
    if x.len() < 2 {
        return Err(Error::InvalidArgument("need a tuple of length g+1 >= 2".into()));
    }
    if !crate::torus::sum_points(x).is_zero() {
        return Err(Error::NonZeroSum("tuple is not in E_0^{g+1}".into()));
    }
    Ok(x[..x.len() - 1]
        .iter()
        .scan(TorusPoint::ZERO, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{random_torsion_point_with, sum_points, torsion_subgroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::VecDeque;

    /// Closure of the generators under composition, as permutations of 0..n.
    fn generate_group(sigma: &SigmaSubgroup) -> HashSet<Vec<usize>> {
        let n = sigma.g_plus_1;
        let id: Vec<usize> = (0..n).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for &i in &sigma.generators {
                let mut q = p.clone();
                q.swap(i - 1, i);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    fn brute_orbits(sigma: &SigmaSubgroup) -> Vec<BTreeSet<usize>> {
        let group = generate_group(sigma);
        let mut orbits: Vec<BTreeSet<usize>> = (0..sigma.g_plus_1)
            .map(|k| group.iter().map(|p| p[k] + 1).collect())
            .collect();
        orbits.sort();
        orbits.dedup();
        orbits
    }

    #[test]
    fn decomposition_examples() {
        let od = SigmaSubgroup::new(6, [1, 2, 5]).unwrap().orbit_decomposition();
        assert_eq!(od.fixed, vec![4]);
        assert_eq!(od.blocks, vec![Block { start: 1, len: 3 }, Block { start: 5, len: 2 }]);
        assert_eq!(od.sizes, vec![3, 2]);
        assert_eq!((od.s, od.d), (2, 1));

        let od = SigmaSubgroup::trivial(3).unwrap().orbit_decomposition();
        assert_eq!(od.fixed, vec![1, 2, 3]);
        assert_eq!((od.s, od.d), (0, 1));

        let od = SigmaSubgroup::full(4).unwrap().orbit_decomposition();
        assert!(od.fixed.is_empty());
        assert_eq!(od.blocks, vec![Block { start: 1, len: 4 }]);
        assert_eq!((od.sizes.clone(), od.d), (vec![4], 4));
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(SigmaSubgroup::new(3, [3]).is_err());
        assert!(SigmaSubgroup::new(3, [0]).is_err());
        assert!(SigmaSubgroup::new(3, [1, 1]).is_err());
        assert!(SigmaSubgroup::new(0, []).is_err());
    }

    #[test]
    fn blocks_match_generated_group_orbits() {
        for n in 1..=7usize {
            for mask in 0u32..(1 << (n - 1)) {
                let gens: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let sigma = SigmaSubgroup::new(n, gens).unwrap();
                let od = sigma.orbit_decomposition();
                let mut ours: Vec<BTreeSet<usize>> = od.blocks.iter().map(|b| b.indices().collect()).collect();
                ours.extend(od.fixed.iter().map(|&j| BTreeSet::from([j])));
                ours.sort();
                assert_eq!(ours, brute_orbits(&sigma), "generators {:?}", sigma.generators);
                assert_eq!(od.group_order(), generate_group(&sigma).len() as u128);
                for &i in &od.sizes {
                    assert!(i >= 2 && i % od.d == 0);
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let zero = vec![TorusPoint::ZERO; 3];
        assert_eq!(epsilon_embed(&zero).unwrap(), vec![TorusPoint::ZERO; 4]);

        let z = [TorusPoint::from_fracs(1, 2, 0, 1), TorusPoint::from_fracs(1, 3, 0, 1)];
        let x = epsilon_embed(&z).unwrap();
        assert_eq!(
            x,
            vec![
                TorusPoint::from_fracs(1, 2, 0, 1),
                TorusPoint::from_fracs(5, 6, 0, 1),
                TorusPoint::from_fracs(2, 3, 0, 1)
            ]
        );
        assert!(sum_points(&x).is_zero());
        assert_eq!(epsilon_inverse(&x).unwrap(), z.to_vec());
        assert!(epsilon_embed(&[]).is_err());
    }

    #[test]
    fn epsilon_is_injective_and_zero_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g = 1 + (rand::Rng::gen_range(&mut rng, 0..5));
            let a: Vec<_> = (0..g).map(|_| random_torsion_point_with(&mut rng, 12)).collect();
            let b: Vec<_> = (0..g).map(|_| random_torsion_point_with(&mut rng, 12)).collect();
            let (ea, eb) = (epsilon_embed(&a).unwrap(), epsilon_embed(&b).unwrap());
            assert!(sum_points(&ea).is_zero());
            assert_eq!(a == b, ea == eb);
        }
    }

    #[test]
    fn zero_sum_subgroup_is_sigma_stable() {
        let sigma = SigmaSubgroup::new(5, [1, 3, 4]).unwrap();
        let group = generate_group(&sigma);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let z: Vec<_> = (0..4).map(|_| random_torsion_point_with(&mut rng, 6)).collect();
            let x = epsilon_embed(&z).unwrap();
            for p in &group {
                let y: Vec<_> = p.iter().map(|&k| x[k]).collect();
                assert!(sum_points(&y).is_zero());
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let od = SigmaSubgroup::new(3, [1]).unwrap().orbit_decomposition();
        let a = TorusPoint::from_fracs(1, 3, 0, 1);
        let b = TorusPoint::from_fracs(1, 2, 0, 1);
        let c = TorusPoint::from_fracs(0, 1, 1, 2);
        assert_eq!(od.canonicalize(&[b, a, c]).unwrap(), vec![a, b, c]);
        assert_eq!(od.canonicalize(&[a, b, c]).unwrap(), vec![a, b, c]);
        assert!(od.canonicalize(&[a, b]).is_err());
    }

    #[test]
    fn canonicalize_is_constant_on_orbits() {
        let e2 = torsion_subgroup(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for gens in [vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2, 3, 5]] {
            let od = SigmaSubgroup::new(6, gens).unwrap().orbit_decomposition();
            for _ in 0..10 {
                let x: Vec<_> = (0..6).map(|_| e2[rand::Rng::gen_range(&mut rng, 0..4)]).collect();
                let canon = od.canonicalize(&x).unwrap();
                assert_eq!(od.canonicalize(&canon).unwrap(), canon);
                let orbit = od.enumerate_orbit(&x).unwrap();
                assert!(orbit.contains(&canon));
                for y in &orbit {
                    assert_eq!(od.canonicalize(y).unwrap(), canon);
                }
            }
        }
    }

    #[test]
    fn orbit_sizes() {
        let p = |a| TorusPoint::from_fracs(a, 5, 0, 1);
        let trivial = SigmaSubgroup::trivial(3).unwrap().orbit_decomposition();
        assert_eq!(trivial.enumerate_orbit(&[p(1), p(2), p(3)]).unwrap().len(), 1);
        let two = SigmaSubgroup::new(2, [1]).unwrap().orbit_decomposition();
        assert_eq!(two.enumerate_orbit(&[p(1), p(2)]).unwrap().len(), 2);
        let three = SigmaSubgroup::full(3).unwrap().orbit_decomposition();
        assert_eq!(three.enumerate_orbit(&[p(1), p(2), p(3)]).unwrap().len(), 6);
        let big = SigmaSubgroup::full(11).unwrap().orbit_decomposition();
        assert!(matches!(
            big.enumerate_orbit(&vec![TorusPoint::ZERO; 11]),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
