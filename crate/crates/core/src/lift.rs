//! Translation automorphisms of `E^g/Σ` and their lifts to the étale cover.
//!
//! A Σ-invariant `t ∈ E_0^{g+1}` is diagonal on each block, so it is given by
//! its fixed coordinates `t_J` and one value `t_α` per block, subject to
//! `sum(t_J) + Σ i_α t_α = 0`.

use serde::{Deserialize, Serialize};

use crate::covers::{big_psi, deck_group, gamma_action, in_sheet0, sample_cover_point, CoverPoint, QuotientPoint};
use crate::error::{Error, Result};
use crate::parallel;
use crate::sigma::OrbitData;
use crate::torus::{random_torsion_point_with, sum_points, TorusPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationDatum {
    /// `t_J`, one point per fixed index.
    pub t_j: Vec<TorusPoint>,
    /// `t_1, ..., t_s`, the diagonal value on each block.
    pub t_diag: Vec<TorusPoint>,
}

impl TranslationDatum {
    pub fn zero(od: &OrbitData) -> TranslationDatum {
        TranslationDatum {
            t_j: vec![TorusPoint::ZERO; od.fixed.len()],
            t_diag: vec![TorusPoint::ZERO; od.s],
        }
    }

    /// Reads the datum off a full point `t ∈ E^{g+1}`, which must be constant on every block.
    pub fn from_full(t: &[TorusPoint], od: &OrbitData) -> Result<TranslationDatum> {
        if t.len() != od.g_plus_1 {
            return Err(Error::Shape(format!(
                "translation of length {} for g+1 = {}",
                t.len(),
                od.g_plus_1
            )));
        }
        let mut t_diag = Vec::with_capacity(od.s);
        for b in &od.blocks {
            let vals = &t[b.positions()];
            if vals.iter().any(|v| *v != vals[0]) {
                return Err(Error::InvalidArgument(format!(
                    "translation is not Σ-invariant: not constant on block starting at {}",
                    b.start
                )));
            }
            t_diag.push(vals[0]);
        }
        Ok(TranslationDatum {
            t_j: od.fixed.iter().map(|&j| t[j - 1]).collect(),
            t_diag,
        })
    }

    /// The full point of `E^{g+1}`, `t_α` repeated over block `I_α`.
    pub fn expand(&self, od: &OrbitData) -> Result<Vec<TorusPoint>> {
        self.check_shape(od)?;
        let mut t = vec![TorusPoint::ZERO; od.g_plus_1];
        for (&j, &v) in od.fixed.iter().zip(&self.t_j) {
            t[j - 1] = v;
        }
        for (b, &v) in od.blocks.iter().zip(&self.t_diag) {
            t[b.positions()].fill(v);
        }
        Ok(t)
    }

    /// `t' `: all fixed coordinates but the last.
    pub fn t_prime(&self) -> &[TorusPoint] {
        &self.t_j[..self.t_j.len().saturating_sub(1)]
    }

    pub fn negate(&self) -> TranslationDatum {
        TranslationDatum {
            t_j: self.t_j.iter().map(|&p| -p).collect(),
            t_diag: self.t_diag.iter().map(|&p| -p).collect(),
        }
    }

    fn check_shape(&self, od: &OrbitData) -> Result<()> {
        if self.t_j.len() != od.fixed.len() || self.t_diag.len() != od.s {
            return Err(Error::Shape(format!(
                "datum with {} fixed and {} block values for |J| = {}, s = {}",
                self.t_j.len(),
                self.t_diag.len(),
                od.fixed.len(),
                od.s
            )));
        }
        Ok(())
    }

    fn require_valid(&self, od: &OrbitData) -> Result<()> {
        if !check_translation_datum(self, od)? {
            return Err(Error::NonZeroSum("translation datum is not in E_0^{g+1}".into()));
        }
        Ok(())
    }
}

/// `sum(t_J) + Σ i_α t_α = 0`.
pub fn check_translation_datum(t: &TranslationDatum, od: &OrbitData) -> Result<bool> {
    t.check_shape(od)?;
    let total = t
        .t_diag
        .iter()
        .zip(&od.sizes)
        .fold(sum_points(&t.t_j), |acc, (p, &i)| acc + p.scalar_mul(i as i64));
    Ok(total.is_zero())
}

/// The automorphism of `E^g/Σ` induced by translation by `t`.
pub fn sigma_bar(w: &QuotientPoint, t: &TranslationDatum, od: &OrbitData) -> Result<QuotientPoint> {
    t.require_valid(od)?;
    w.validate(od)?;
    Ok(QuotientPoint {
        y: w.y.iter().zip(t.t_prime()).map(|(&a, &b)| a + b).collect(),
        w: w.w.iter().zip(&t.t_diag).map(|(m, &v)| m.translate(v)).collect(),
    })
}

/// All `q` with `(i_1/d) q = Σ (i_α/d) t_α`, sorted.
pub fn q_candidates(t: &TranslationDatum, od: &OrbitData) -> Result<Vec<TorusPoint>> {
    if !od.j_empty() {
        return Err(Error::InvalidArgument("q is only defined when J is empty".into()));
    }
    t.require_valid(od)?;
    let c = od.reduced_sizes();
    let rhs = t
        .t_diag
        .iter()
        .zip(&c)
        .fold(TorusPoint::ZERO, |acc, (p, &ci)| acc + p.scalar_mul(ci as i64));
    let mut sols = rhs.division_preimages(c[0] as i64)?;
    sols.sort();
    Ok(sols)
}

/// The smallest solution `q` (in the point order), which lies in `E[i_1]`.
pub fn compute_q(t: &TranslationDatum, od: &OrbitData) -> Result<TorusPoint> {
    let q = q_candidates(t, od)?[0];
    if !q.is_torsion(od.sizes[0] as u64) {
        return Err(Error::Torsion(format!("q = {q} is not {}-torsion", od.sizes[0])));
    }
    Ok(q)
}

/// Lift of `σ̄` to the cover using the canonical `q` when `J = ∅`.
pub fn lift_translation(c: &CoverPoint, t: &TranslationDatum, od: &OrbitData) -> Result<CoverPoint> {
    let q = if od.j_empty() { Some(compute_q(t, od)?) } else { None };
    lift_translation_with_q(c, t, od, q)
}

/// Lift of `σ̄` with a caller-chosen `q` (ignored when `J ≠ ∅`).
///
/// `J ≠ ∅`: `(y, z, x) ↦ (y + t', z_α + t_α, x)`.
/// `J = ∅`: `(z, x) ↦ (z_1 + t_1 - q, z_α + t_α, Φ(x_1, q), x_α)`.
pub fn lift_translation_with_q(
    c: &CoverPoint,
    t: &TranslationDatum,
    od: &OrbitData,
    q: Option<TorusPoint>,
) -> Result<CoverPoint> {
    t.require_valid(od)?;
    c.validate(od)?;
    let mut out = CoverPoint {
        y: c.y.iter().zip(t.t_prime()).map(|(&a, &b)| a + b).collect(),
        z: c.z.iter().zip(&t.t_diag).map(|(&a, &b)| a + b).collect(),
        x: c.x.clone(),
    };
    if od.j_empty() {
        let q = q.ok_or_else(|| Error::InvalidArgument("J is empty: q is required".into()))?;
        if !q_candidates(t, od)?.contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "q = {q} does not solve the defining equation"
            )));
        }
        out.z[0] -= q;
        out.x[0] = out.x[0].translate(q);
    }
    Ok(out)
}

/// A random admissible datum with entries in `E[N]`, except the value
/// solved for to enforce the zero-sum condition.
pub fn random_datum(od: &OrbitData, torsion_level: i64, rng: &mut rand_chacha::ChaCha8Rng) -> TranslationDatum {
    let mut t_j: Vec<TorusPoint> = (0..od.fixed.len())
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    let mut t_diag: Vec<TorusPoint> = (0..od.s)
        .map(|_| random_torsion_point_with(rng, torsion_level))
        .collect();
    if let Some(last) = t_j.last_mut() {
        *last = TorusPoint::ZERO;
        let rest = t_diag
            .iter()
            .zip(&od.sizes)
            .fold(sum_points(&t_j), |acc, (p, &i)| acc + p.scalar_mul(i as i64));
        *t_j.last_mut().unwrap() = -rest;
    } else if od.s > 0 {
        let s = od.s;
        let rest = t_diag[..s - 1]
            .iter()
            .zip(&od.sizes)
            .fold(TorusPoint::ZERO, |acc, (p, &i)| acc + p.scalar_mul(i as i64));
        let mut sols = (-rest)
            .division_preimages(od.sizes[s - 1] as i64)
            .expect("positive block size");
        sols.sort();
        t_diag[s - 1] = sols[0];
    }
    TranslationDatum { t_j, t_diag }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCheck {
    pub point: CoverPoint,
    /// `Ψ(lift(c)) = σ̄(Ψ(c))` with the canonical `q`.
    pub commutes: bool,
    /// Same square with the alternative `q`.
    pub commutes_alt_q: bool,
    /// `J = ∅`: the lift stays on the identity sheet.
    pub sheet_preserved: bool,
    /// `J ≠ ∅`: the reconstructed last fixed coordinate moves by the last entry of `t_J`.
    pub dropped_coordinate_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LiftCheck {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
            && self.commutes
            && self.commutes_alt_q
            && self.sheet_preserved
            && self.dropped_coordinate_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub g_plus_1: usize,
    pub fixed: Vec<usize>,
    pub sizes: Vec<usize>,
    pub torsion_level: i64,
    pub samples: usize,
    pub seed: u64,
    pub datum: TranslationDatum,
    pub datum_valid: bool,
    /// Canonical and alternative `q` (J = ∅ only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<TorusPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_q: Option<TorusPoint>,
    /// Observed: the two lifts differ by the deck element `(alt_q - q, 0, ..., 0)` on every sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_q_differs_by_deck: Option<bool>,
    pub checks: Vec<LiftCheck>,
    pub pass: bool,
}

fn check_point(
    c: CoverPoint,
    t: &TranslationDatum,
    od: &OrbitData,
    q: Option<TorusPoint>,
    alt_q: Option<TorusPoint>,
) -> (LiftCheck, Option<bool>) {
    let mut check = LiftCheck {
        point: c,
        commutes: false,
        commutes_alt_q: false,
        sheet_preserved: true,
        dropped_coordinate_ok: true,
        witness: None,
    };
    let result = (|| -> Result<Option<bool>> {
        let c = &check.point;
        let base = big_psi(c, od)?;
        let expected = sigma_bar(&base, t, od)?;
        let lifted = lift_translation_with_q(c, t, od, q)?;
        check.commutes = big_psi(&lifted, od)? == expected;
        let lifted_alt = lift_translation_with_q(c, t, od, alt_q)?;
        check.commutes_alt_q = big_psi(&lifted_alt, od)? == expected;
        if od.j_empty() {
            check.sheet_preserved = in_sheet0(&lifted.z, &od.sizes) && in_sheet0(&lifted_alt.z, &od.sizes);
            let (q, alt) = (q.unwrap(), alt_q.unwrap());
            let mut xi = vec![TorusPoint::ZERO; od.s];
            xi[0] = alt - q;
            let in_deck = deck_group(od).contains(&xi);
            return Ok(Some(in_deck && gamma_action(&xi, &lifted, od)? == lifted_alt));
        }
        let before = base.dropped_coordinate(od).expect("J is nonempty");
        let after = expected.dropped_coordinate(od).expect("J is nonempty");
        check.dropped_coordinate_ok = after == before + *t.t_j.last().expect("J is nonempty");
        Ok(None)
    })();
    match result {
        Ok(rel) => (check, rel),
        Err(e) => {
            check.witness = Some(e.to_string());
            (check, None)
        }
    }
}

/// Checks `Ψ ∘ lift = σ̄ ∘ Ψ` exactly on sampled cover points, for the
/// canonical `q` and one other solution when `J = ∅`.
pub fn verify_lift(
    od: &OrbitData,
    t: &TranslationDatum,
    torsion_level: i64,
    samples: usize,
    seed: u64,
) -> Result<LiftReport> {
    if torsion_level < 1 || samples < 1 {
        return Err(Error::InvalidArgument("torsion level and samples must be >= 1".into()));
    }
    let datum_valid = check_translation_datum(t, od)?;
    let (q, alt_q) = if od.j_empty() && datum_valid {
        let cands = q_candidates(t, od)?;
        (Some(compute_q(t, od)?), cands.last().copied())
    } else {
        (None, None)
    };
    let results = if datum_valid {
        parallel::map_indexed(samples, seed, |rng| {
            let c = sample_cover_point(od, torsion_level, rng);
            check_point(c, t, od, q, alt_q)
        })
    } else {
        Vec::new()
    };
    let alt_q_differs_by_deck = od
        .j_empty()
        .then(|| results.iter().all(|(_, rel)| *rel == Some(true)))
        .filter(|_| datum_valid);
    let checks: Vec<LiftCheck> = results.into_iter().map(|(c, _)| c).collect();
    let pass = datum_valid && checks.iter().all(LiftCheck::pass);
    Ok(LiftReport {
        g_plus_1: od.g_plus_1,
        fixed: od.fixed.clone(),
        sizes: od.sizes.clone(),
        torsion_level,
        samples,
        seed,
        datum: t.clone(),
        datum_valid,
        q,
        alt_q,
        alt_q_differs_by_deck,
        checks,
        pass,
    })
}
