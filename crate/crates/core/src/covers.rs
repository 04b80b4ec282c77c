//! The covering maps `Ψ`, `Φ`, their torsion-group actions, and a
//! brute-force verifier checking that fibers are exactly group orbits.
//!
//! Points of the cover are `(y, z_1..z_s, x_1..x_s)` with `y ∈ E^{|J|-1}`,
//! `z_α ∈ E` and `x_α ∈ S_0^{i_α}E` (zero-sum multisets). Points of
//! `E^g/Σ` are `(y, w_1..w_s)` with `w_α ∈ S^{i_α}E`; for `J ≠ ∅` the last
//! fixed coordinate is dropped and recovered from the zero-sum constraint.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};
use crate::parallel;
use crate::sigma::{epsilon_embed, OrbitData};
use crate::structure::galois_group;
use crate::torus::{random_torsion_point_with, sum_points, torsion_subgroup, TorusPoint};

/// Upper bound on candidate evaluations in a single fiber search.
pub const FIBER_GUARD: u128 = 10_000_000;

/// A point `((x_1, ..., x_r))` of `S^rE`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymPoint(Vec<TorusPoint>);

impl SymPoint {
    pub fn new(mut points: Vec<TorusPoint>) -> SymPoint {
        points.sort();
        SymPoint(points)
    }

    pub fn zero(r: usize) -> SymPoint {
        SymPoint(vec![TorusPoint::ZERO; r])
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `((x_1 + t, ..., x_r + t))`
    pub fn translate(&self, t: TorusPoint) -> SymPoint {
        SymPoint::new(self.0.iter().map(|&p| p + t).collect())
    }
}

impl fmt::Display for SymPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "((")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "))")
    }
}

pub fn sym_sum(x: &SymPoint) -> TorusPoint {
    sum_points(&x.0)
}

fn require_torsion(xi: TorusPoint, r: usize) -> Result<()> {
    if !xi.is_torsion(r as u64) {
        return Err(Error::Torsion(format!("{xi} is not {r}-torsion")));
    }
    Ok(())
}

/// `Ψ(x_1, ..., x_r, z) = (x_1 + z, ..., x_r + z)` on `E_0^r × E`.
pub fn psi_small(x: &[TorusPoint], z: TorusPoint) -> Result<Vec<TorusPoint>> {
    if !sum_points(x).is_zero() {
        return Err(Error::NonZeroSum("psi_small input".into()));
    }
    Ok(x.iter().map(|&p| p + z).collect())
}

/// `ξ ▷ (x, z) = (x_1 + ξ, ..., x_r + ξ, z - ξ)` for `ξ ∈ E[r]`, `r = x.len()`.
pub fn xi_action_small(xi: TorusPoint, x: &[TorusPoint], z: TorusPoint) -> Result<(Vec<TorusPoint>, TorusPoint)> {
    require_torsion(xi, x.len())?;
    Ok((x.iter().map(|&p| p + xi).collect(), z - xi))
}

/// `Φ(((x_1..x_r)), z) = ((x_1 + z, ..., x_r + z))` on `S_0^rE × E`.
pub fn phi(x: &SymPoint, z: TorusPoint) -> Result<SymPoint> {
    if !sym_sum(x).is_zero() {
        return Err(Error::NonZeroSum(format!("phi input {x}")));
    }
    Ok(x.translate(z))
}

/// `ξ ▷ (x, z) = (((x_1 + ξ, ..., x_r + ξ)), z - ξ)` for `ξ ∈ E[r]`.
pub fn xi_action_sym(xi: TorusPoint, x: &SymPoint, z: TorusPoint) -> Result<(SymPoint, TorusPoint)> {
    require_torsion(xi, x.len())?;
    if !sym_sum(x).is_zero() {
        return Err(Error::NonZeroSum(format!("xi_action_sym input {x}")));
    }
    Ok((x.translate(xi), z - xi))
}

/// All `(x, z)` with `x ∈ S_0^rE` and `Φ(x, z) = w`, by scanning `z` over `E[level]`.
///
/// `Φ(x, z) = w` forces `x = w - z`, so the scan only tests whether that
/// multiset has zero sum. Complete whenever every solution lies in `E[level]`.
pub fn phi_fiber_scan(w: &SymPoint, level: i64) -> Result<Vec<(SymPoint, TorusPoint)>> {
    let cost = (level as u128).pow(2);
    if cost > FIBER_GUARD {
        return Err(Error::GuardExceeded {
            needed: cost,
            limit: FIBER_GUARD,
        });
    }
    Ok(torsion_subgroup(level)?
        .into_iter()
        .filter_map(|z| {
            let x = w.translate(-z);
            sym_sum(&x).is_zero().then_some((x, z))
        })
        .collect())
}

/// The `E[r]`-orbit of `(x, z)` under [`xi_action_sym`].
pub fn xi_orbit(x: &SymPoint, z: TorusPoint) -> Result<Vec<(SymPoint, TorusPoint)>> {
    let r = x.len() as i64;
    torsion_subgroup(r)?
        .into_iter()
        .map(|xi| xi_action_sym(xi, x, z))
        .collect()
}

/// `Θ(z) = Σ i_α z_α`.
pub fn theta(z: &[TorusPoint], sizes: &[usize]) -> Result<TorusPoint> {
    if z.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "{} coordinates for {} blocks",
            z.len(),
            sizes.len()
        )));
    }
    Ok(z.iter()
        .zip(sizes)
        .fold(TorusPoint::ZERO, |acc, (p, &i)| acc + p.scalar_mul(i as i64)))
}

/// `(1/d)·Θ(z) = Σ (i_α/d) z_α`; its value labels the component of `ker Θ` containing `z`.
pub fn sheet_value(z: &[TorusPoint], sizes: &[usize]) -> Result<TorusPoint> {
    if z.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "{} coordinates for {} blocks",
            z.len(),
            sizes.len()
        )));
    }
    let d = sizes.iter().fold(0usize, |acc, &x| acc.gcd(&x)).max(1);
    Ok(z.iter()
        .zip(sizes)
        .fold(TorusPoint::ZERO, |acc, (p, &i)| acc + p.scalar_mul((i / d) as i64)))
}

/// Membership in `ker(Θ)^0`, the kernel of `(1/d)·Θ`.
pub fn in_sheet0(z: &[TorusPoint], sizes: &[usize]) -> bool {
    sheet_value(z, sizes).map(|v| v.is_zero()).unwrap_or(false)
}

/// Groups `ker Θ ∩ E[level]^s` by the value of `(1/d)·Θ`. Returns `(value, count)` pairs, sorted.
pub fn sheet_classes(sizes: &[usize], level: i64) -> Result<Vec<(TorusPoint, usize)>> {
    let pts = torsion_subgroup(level)?;
    let cost = (pts.len() as u128).pow(sizes.len() as u32);
    if cost > FIBER_GUARD {
        return Err(Error::GuardExceeded {
            needed: cost,
            limit: FIBER_GUARD,
        });
    }
    let mut classes = std::collections::BTreeMap::new();
    for z in std::iter::repeat_n(pts.iter().copied(), sizes.len()).multi_cartesian_product() {
        if theta(&z, sizes)?.is_zero() {
            *classes.entry(sheet_value(&z, sizes)?).or_insert(0usize) += 1;
        }
    }
    Ok(classes.into_iter().collect())
}

/// A point `(y, z, x)` of the cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverPoint {
    pub y: Vec<TorusPoint>,
    pub z: Vec<TorusPoint>,
    pub x: Vec<SymPoint>,
}

impl CoverPoint {
    pub fn zero(od: &OrbitData) -> CoverPoint {
        CoverPoint {
            y: vec![TorusPoint::ZERO; od.fixed.len().saturating_sub(1)],
            z: vec![TorusPoint::ZERO; od.s],
            x: od.sizes.iter().map(|&i| SymPoint::zero(i)).collect(),
        }
    }

    pub fn validate(&self, od: &OrbitData) -> Result<()> {
        if self.y.len() != od.fixed.len().saturating_sub(1) || self.z.len() != od.s || self.x.len() != od.s {
            return Err(Error::Shape("cover point does not match the orbit data".into()));
        }
        for (x, &i) in self.x.iter().zip(&od.sizes) {
            if x.len() != i {
                return Err(Error::Shape(format!(
                    "multiset of size {} in a block of size {i}",
                    x.len()
                )));
            }
            if !sym_sum(x).is_zero() {
                return Err(Error::NonZeroSum(format!("cover multiset {x}")));
            }
        }
        if od.j_empty() && !in_sheet0(&self.z, &od.sizes) {
            return Err(Error::OffSheet);
        }
        Ok(())
    }
}

/// A point `(y, w)` of `E^g/Σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientPoint {
    pub y: Vec<TorusPoint>,
    pub w: Vec<SymPoint>,
}

impl QuotientPoint {
    /// Image of `x ∈ E_0^{g+1}` under `E^{g+1} → E^J × S^{I_1}E × ... × S^{I_s}E`,
    /// dropping the last fixed coordinate.
    pub fn from_tuple(x: &[TorusPoint], od: &OrbitData) -> Result<QuotientPoint> {
        if x.len() != od.g_plus_1 {
            return Err(Error::Shape(format!(
                "tuple of length {} for g+1 = {}",
                x.len(),
                od.g_plus_1
            )));
        }
        if !sum_points(x).is_zero() {
            return Err(Error::NonZeroSum("tuple is not in E_0^{g+1}".into()));
        }
        let mut y: Vec<TorusPoint> = od.fixed.iter().map(|&j| x[j - 1]).collect();
        y.pop();
        let w = od
            .blocks
            .iter()
            .map(|b| SymPoint::new(x[b.positions()].to_vec()))
            .collect();
        Ok(QuotientPoint { y, w })
    }

    /// The dropped last fixed coordinate, `-(Σ y + Σ sum(w_α))`; `None` when `J = ∅`.
    pub fn dropped_coordinate(&self, od: &OrbitData) -> Option<TorusPoint> {
        (!od.j_empty())
            .then(|| -(sum_points(&self.y) + self.w.iter().map(sym_sum).fold(TorusPoint::ZERO, |a, b| a + b)))
    }

    pub fn validate(&self, od: &OrbitData) -> Result<()> {
        if self.y.len() != od.fixed.len().saturating_sub(1) || self.w.len() != od.s {
            return Err(Error::Shape("quotient point does not match the orbit data".into()));
        }
        if self.w.iter().zip(&od.sizes).any(|(w, &i)| w.len() != i) {
            return Err(Error::Shape("multiset size does not match its block".into()));
        }
        if od.j_empty()
            && !self
                .w
                .iter()
                .map(sym_sum)
                .fold(TorusPoint::ZERO, |a, b| a + b)
                .is_zero()
        {
            return Err(Error::NonZeroSum("quotient point with J = ∅".into()));
        }
        Ok(())
    }

    /// Largest denominator level among the coordinates.
    pub fn torsion_level(&self) -> u64 {
        self.y
            .iter()
            .chain(self.w.iter().flat_map(|w| w.points()))
            .fold(1u64, |acc, p| acc.lcm(&p.order()))
    }
}

/// `Ψ(y, z, x) = (y, Φ(x_1, z_1), ..., Φ(x_s, z_s))`.
pub fn big_psi(c: &CoverPoint, od: &OrbitData) -> Result<QuotientPoint> {
    c.validate(od)?;
    let w =
        c.x.iter()
            .zip(&c.z)
            .map(|(x, &z)| phi(x, z))
            .collect::<Result<Vec<_>>>()?;
    Ok(QuotientPoint { y: c.y.clone(), w })
}

/// `ξ ▷ (y, z, x) = (y, z_α - ξ_α, ξ_α ▷ x_α)` for `ξ ∈ E[i_1] × ... × E[i_s]`.
pub fn gamma_action(xi: &[TorusPoint], c: &CoverPoint, od: &OrbitData) -> Result<CoverPoint> {
    if xi.len() != od.s || c.z.len() != od.s || c.x.len() != od.s {
        return Err(Error::Shape("gamma element does not match the orbit data".into()));
    }
    let mut out = c.clone();
    for (a, &t) in xi.iter().enumerate() {
        require_torsion(t, od.sizes[a])?;
        out.z[a] = c.z[a] - t;
        out.x[a] = c.x[a].translate(t);
    }
    Ok(out)
}

/// All of `Γ = E[i_1] × ... × E[i_s]`.
pub fn gamma_elements(od: &OrbitData) -> Vec<Vec<TorusPoint>> {
    if od.s == 0 {
        return vec![Vec::new()];
    }
    od.sizes
        .iter()
        .map(|&i| torsion_subgroup(i as i64).expect("block sizes are positive"))
        .multi_cartesian_product()
        .collect()
}

/// The deck group: `Γ` when `J ≠ ∅`, the stabilizer of the identity sheet otherwise.
pub fn deck_group(od: &OrbitData) -> Vec<Vec<TorusPoint>> {
    let all = gamma_elements(od);
    if od.j_empty() {
        all.into_iter().filter(|xi| in_sheet0(xi, &od.sizes)).collect()
    } else {
        all
    }
}

pub fn deck_orbit(c: &CoverPoint, od: &OrbitData) -> Result<BTreeSet<CoverPoint>> {
    deck_group(od).iter().map(|xi| gamma_action(xi, c, od)).collect()
}

/// `N' = N · lcm(i_1, ..., i_s)`: every preimage of a target in `E[N]` lies in `E[N']`.
pub fn working_level(od: &OrbitData, torsion_level: i64) -> i64 {
    torsion_level * od.sizes.iter().fold(1usize, |acc, &i| acc.lcm(&i)) as i64
}

/// Fiber of `Ψ` over `target`, found by scanning every `z_α` over `E[N']`.
///
/// `N` must bound the torsion level of the target. For each block the scan
/// keeps the `z_α` for which `w_α - z_α` has zero sum; the per-block
/// candidates are then combined and, when `J = ∅`, filtered to the sheet.
pub fn fiber_bruteforce(target: &QuotientPoint, od: &OrbitData, torsion_level: i64) -> Result<BTreeSet<CoverPoint>> {
    target.validate(od)?;
    if torsion_level < 1 || !(torsion_level as u64).is_multiple_of(target.torsion_level()) {
        return Err(Error::InvalidArgument(format!(
            "target has torsion level {}, not dividing N = {torsion_level}",
            target.torsion_level()
        )));
    }
    let level = working_level(od, torsion_level);
    let scan_cost = (level as u128).pow(2) * od.s as u128;
    if scan_cost > FIBER_GUARD {
        return Err(Error::GuardExceeded {
            needed: scan_cost,
            limit: FIBER_GUARD,
        });
    }
    let per_block = target
        .w
        .iter()
        .map(|w| phi_fiber_scan(w, level))
        .collect::<Result<Vec<_>>>()?;
    combine_blocks(target, od, per_block)
}

/// Fiber of `Ψ` over `target` by explicit division: `z_α` ranges over the
/// `i_α^2` solutions of `i_α z_α = sum(w_α)`.
pub fn fiber_by_division(target: &QuotientPoint, od: &OrbitData) -> Result<BTreeSet<CoverPoint>> {
    target.validate(od)?;
    let per_block = target
        .w
        .iter()
        .zip(&od.sizes)
        .map(|(w, &i)| {
            Ok(sym_sum(w)
                .division_preimages(i as i64)?
                .into_iter()
                .map(|z| (w.translate(-z), z))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    combine_blocks(target, od, per_block)
}

fn combine_blocks(
    target: &QuotientPoint,
    od: &OrbitData,
    per_block: Vec<Vec<(SymPoint, TorusPoint)>>,
) -> Result<BTreeSet<CoverPoint>> {
    let combos: u128 = per_block.iter().map(|v| v.len() as u128).product();
    if combos > FIBER_GUARD {
        return Err(Error::GuardExceeded {
            needed: combos,
            limit: FIBER_GUARD,
        });
    }
    if od.s == 0 {
        return Ok(BTreeSet::from([CoverPoint {
            y: target.y.clone(),
            z: vec![],
            x: vec![],
        }]));
    }
    let mut fiber = BTreeSet::new();
    for choice in per_block.iter().map(|v| v.iter()).multi_cartesian_product() {
        let z: Vec<TorusPoint> = choice.iter().map(|(_, z)| *z).collect();
        if od.j_empty() && !in_sheet0(&z, &od.sizes) {
            continue;
        }
        let x = choice.iter().map(|(x, _)| x.clone()).collect();
        fiber.insert(CoverPoint {
            y: target.y.clone(),
            z,
            x,
        });
    }
    Ok(fiber)
}

/// Zero-sum multisets of size `r` drawn from `E[level]`.
pub fn zero_sum_multisets(r: usize, level: i64) -> Result<Vec<SymPoint>> {
    let pts = torsion_subgroup(level)?;
    Ok(pts
        .into_iter()
        .combinations_with_replacement(r)
        .filter(|c| sum_points(c).is_zero())
        .map(SymPoint::new)
        .collect())
}

/// Fiber of `Ψ` by testing every `(z_α, x_α) ∈ E[level] × S_0^{i_α}(E[level])`.
/// Exponential; meant for cross-checks at `E[2]`-, `E[3]`-sized levels.
pub fn fiber_exhaustive(target: &QuotientPoint, od: &OrbitData, level: i64) -> Result<BTreeSet<CoverPoint>> {
    target.validate(od)?;
    let pts = torsion_subgroup(level)?;
    let mut per_block = Vec::new();
    for (w, &i) in target.w.iter().zip(&od.sizes) {
        let xs = zero_sum_multisets(i, level)?;
        let cost = xs.len() as u128 * pts.len() as u128;
        if cost > FIBER_GUARD {
            return Err(Error::GuardExceeded {
                needed: cost,
                limit: FIBER_GUARD,
            });
        }
        let mut sols = Vec::new();
        for x in &xs {
            for &z in &pts {
                if phi(x, z)? == *w {
                    sols.push((x.clone(), z));
                }
            }
        }
        per_block.push(sols);
    }
    combine_blocks(target, od, per_block)
}

/// Random point of `E^g/Σ` with coordinates in `E[N]`: the image of a random point of `E^g`.
pub fn sample_target(od: &OrbitData, torsion_level: i64, rng: &mut ChaCha8Rng) -> QuotientPoint {
    let z: Vec<TorusPoint> = (0..od.g())
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    let x = epsilon_embed(&z).expect("g >= 1");
    QuotientPoint::from_tuple(&x, od).expect("epsilon lands in E_0^{g+1}")
}

/// Random zero-sum multiset of size `r` with entries in `E[N]`.
pub fn sample_zero_sum(r: usize, torsion_level: i64, rng: &mut ChaCha8Rng) -> SymPoint {
    let mut pts: Vec<TorusPoint> = (0..r.saturating_sub(1))
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    let total = sum_points(&pts);
    if r > 0 {
        pts.push(-total);
    }
    SymPoint::new(pts)
}

/// Random point of the cover. When `J = ∅`, `z_1` is chosen among the
/// solutions of `(i_1/d) z_1 = -Σ_{α≥2} (i_α/d) z_α` so the point lies on the sheet.
pub fn sample_cover_point(od: &OrbitData, torsion_level: i64, rng: &mut ChaCha8Rng) -> CoverPoint {
    let y = (0..od.fixed.len().saturating_sub(1))
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    let mut z: Vec<TorusPoint> = (0..od.s)
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    if od.j_empty() {
        let c = od.reduced_sizes();
        let rest = z[1..]
            .iter()
            .zip(&c[1..])
            .fold(TorusPoint::ZERO, |acc, (p, &ci)| acc + p.scalar_mul(ci as i64));
        let sols = (-rest).division_preimages(c[0] as i64).expect("positive divisor");
        z[0] = sols[rng.gen_range(0..sols.len())];
    }
    let x = od
        .sizes
        .iter()
        .map(|&i| sample_zero_sum(i, torsion_level, rng))
        .collect();
    CoverPoint { y, z, x }
}

/// Invariant factors of a group of tuples, from the orders of its elements.
pub fn invariants_from_elements(elements: &[Vec<TorusPoint>]) -> AbelianInvariants {
    let orders: Vec<u64> = elements
        .iter()
        .map(|xi| xi.iter().fold(1u64, |acc, p| acc.lcm(&p.order())))
        .collect();
    AbelianInvariants::from_element_orders(&orders)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConfig {
    pub g_plus_1: usize,
    pub fixed: Vec<usize>,
    pub sizes: Vec<usize>,
    pub d: usize,
    pub torsion_level: i64,
    pub working_level: i64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCheck {
    pub target: QuotientPoint,
    pub fiber_size: usize,
    pub expected: u64,
    /// The fiber equals the deck-group orbit of one of its points.
    pub orbit_match: bool,
    /// Every non-identity deck element moves every fiber point.
    pub free: bool,
    /// Error or mismatch description, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl FiberCheck {
    pub fn pass(&self) -> bool {
        self.witness.is_none() && self.fiber_size as u64 == self.expected && self.orbit_match && self.free
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub config: CoverConfig,
    pub galois: AbelianInvariants,
    /// Invariants of the group `{ξ ∈ Γ : ξ ▷ c ∈ fiber(c)}`, from element orders.
    pub galois_from_fibers: AbelianInvariants,
    pub checks: Vec<FiberCheck>,
    pub pass: bool,
}

fn check_target(
    target: QuotientPoint,
    od: &OrbitData,
    torsion_level: i64,
    deck: &[Vec<TorusPoint>],
    expected: u64,
) -> FiberCheck {
    let mut check = FiberCheck {
        target,
        fiber_size: 0,
        expected,
        orbit_match: false,
        free: false,
        witness: None,
    };
    let fiber = match fiber_bruteforce(&check.target, od, torsion_level) {
        Ok(f) => f,
        Err(e) => {
            check.witness = Some(e.to_string());
            return check;
        }
    };
    check.fiber_size = fiber.len();
    let Some(first) = fiber.iter().next() else {
        check.witness = Some("empty fiber".into());
        return check;
    };
    match deck
        .iter()
        .map(|xi| gamma_action(xi, first, od))
        .collect::<Result<Vec<_>>>()
    {
        Ok(images) => {
            let orbit: BTreeSet<CoverPoint> = images.iter().cloned().collect();
            check.orbit_match = orbit == fiber;
            check.free = fiber.iter().all(|c| {
                deck.iter()
                    .filter(|xi| xi.iter().any(|p| !p.is_zero()))
                    .all(|xi| gamma_action(xi, c, od).map(|img| img != *c).unwrap_or(false))
            });
            if !check.orbit_match {
                let stray = fiber.symmetric_difference(&orbit).next().cloned();
                check.witness = Some(format!("fiber and orbit differ at {stray:?}"));
            } else if let Some(bad) = fiber
                .iter()
                .find(|c| big_psi(c, od).ok().as_ref() != Some(&check.target))
            {
                check.witness = Some(format!("fiber point {bad:?} does not map to the target"));
            }
        }
        Err(e) => check.witness = Some(e.to_string()),
    }
    check
}

/// Samples targets of `E^g/Σ` in `E[N]` and checks, for each, that the fiber
/// is nonempty, has `galois_order` points, is one deck-group orbit, and that
/// the action on it is free.
pub fn verify_cover(od: &OrbitData, torsion_level: i64, samples: usize, seed: u64) -> Result<CoverReport> {
    if torsion_level < 1 {
        return Err(Error::InvalidArgument("torsion level must be >= 1".into()));
    }
    if samples < 1 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    if od.g_plus_1 < 2 {
        return Err(Error::InvalidArgument("need g+1 >= 2".into()));
    }
    let galois = galois_group(od);
    let deck = deck_group(od);
    let checks: Vec<FiberCheck> = parallel::map_indexed(samples, seed, |rng| {
        let target = sample_target(od, torsion_level, rng);
        check_target(target, od, torsion_level, &deck, galois.order())
    });

    // deck transformations read off the first fiber, independently of the Smith form route
    let galois_from_fibers = match checks.first().map(|c| fiber_bruteforce(&c.target, od, torsion_level)) {
        Some(Ok(fiber)) if !fiber.is_empty() => {
            let base = fiber.iter().next().unwrap();
            let elems: Vec<Vec<TorusPoint>> = gamma_elements(od)
                .into_iter()
                .filter(|xi| {
                    gamma_action(xi, base, od)
                        .map(|img| fiber.contains(&img))
                        .unwrap_or(false)
                })
                .collect();
            invariants_from_elements(&elems)
        }
        _ => AbelianInvariants::trivial(),
    };
    let pass = checks.iter().all(FiberCheck::pass) && galois_from_fibers == galois;
    Ok(CoverReport {
        config: CoverConfig {
            g_plus_1: od.g_plus_1,
            fixed: od.fixed.clone(),
            sizes: od.sizes.clone(),
            d: od.d,
            torsion_level,
            working_level: working_level(od, torsion_level),
            samples,
            seed,
        },
        galois,
        galois_from_fibers,
        checks,
        pass,
    })
}
