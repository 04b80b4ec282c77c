//! Discrete structure of `E^g/Σ`: the bundle shape over `E^{|J|+s-1}`, the
//! Galois group of the étale cover, and the component structure of `ker Θ`.
//!
//! Both coordinates of `E ≅ (Q/Z)^2` behave identically, so every group
//! below is computed for a single `Q/Z` coordinate and then squared.

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};
use crate::sigma::OrbitData;
use crate::smith::{unimodular_reduction, IntMatrix};

/// Galois group of the cover `Ψ`.
///
/// With a fixed index (or no blocks) this is `E[i_1] × ... × E[i_s]`. With
/// `J = ∅` it is the kernel of `(z_α) ↦ Σ (i_α/d) z_α` into `E[d]`.
pub fn galois_group(od: &OrbitData) -> AbelianInvariants {
    if od.s == 0 {
        return AbelianInvariants::trivial();
    }
    let sizes: Vec<i64> = od.sizes.iter().map(|&i| i as i64).collect();
    if !od.j_empty() {
        let cyclic: Vec<u64> = od.sizes.iter().map(|&i| i as u64).collect();
        return AbelianInvariants::from_cyclic(&cyclic).squared();
    }
    AbelianInvariants::from_relation_matrix(&sheet_kernel_presentation(&sizes)).squared()
}

/// Integer presentation of `K = ker(⊕ Z/i_α → Z/d, z ↦ Σ c_α z_α)`, `c_α = i_α/d`.
///
/// With `c · M = (1, 0, ..., 0)` the lattice `L = {z ∈ Z^s : c·z ≡ 0 mod d}`
/// has basis `B = M · diag(d, 1, ..., 1)`, and `K = L / diag(i) Z^s`. The
/// relations in the basis `B` are `B^{-1} diag(i) = diag(1/d, 1, ..., 1) M^{-1} diag(i)`.
/// The first row of `M^{-1}` is `c`, so the division by `d` is exact.
pub fn sheet_kernel_presentation(sizes: &[i64]) -> IntMatrix {
    let s = sizes.len();
    let d = sizes.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
    let c: Vec<i64> = sizes.iter().map(|&i| i / d).collect();
    let m = unimodular_reduction(&c);
    let m_inv = inverse_unimodular(&m);
    let mut rel = IntMatrix::zeros(s, s);
    for r in 0..s {
        for (col, &size) in sizes.iter().enumerate() {
            let mut x = m_inv.get(r, col) * size;
            if r == 0 {
                debug_assert_eq!(x % d, 0);
                x /= d;
            }
            rel.set(r, col, x);
        }
    }
    rel
}

/// Inverse of a unimodular matrix via its Smith form: `U M V = I` gives `M^{-1} = V U`.
fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    let snf = crate::smith::smith_normal_form(m);
    assert!(snf.diagonal().iter().all(|&x| x == 1), "matrix is not unimodular");
    snf.v.mul(&snf.u)
}

/// `ker Θ ≅ E[d] × E^{s-1}` for `Θ(z) = Σ i_α z_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaKernel {
    pub d: u64,
    pub torus_rank: usize,
    pub torsion: AbelianInvariants,
    pub component_count: u64,
}

pub fn theta_kernel_structure(sizes: &[usize]) -> Result<ThetaKernel> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("theta needs at least one block".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("block sizes must be positive".into()));
    }
    let d = sizes
        .iter()
        .fold(0u64, |acc, &x| num_integer::Integer::gcd(&acc, &(x as u64)));
    Ok(ThetaKernel {
        d,
        torus_rank: sizes.len() - 1,
        torsion: AbelianInvariants::from_cyclic(&[d]).squared(),
        component_count: d * d,
    })
}

/// Summary of `E^g/Σ` and its étale cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDescriptor {
    pub g: usize,
    pub fixed: Vec<usize>,
    pub sizes: Vec<usize>,
    pub s: usize,
    pub j_empty: bool,
    /// Dimension of the base `E^{|J|+s-1}`.
    pub base_dim: usize,
    /// `i_α - 1`: the fiber is `P^{i_1-1} × ... × P^{i_s-1}`.
    pub fiber_dims: Vec<usize>,
    pub galois: AbelianInvariants,
    pub galois_order: u64,
    pub d: usize,
    pub component_count_of_ker_theta: u64,
    /// Domain of the cover, e.g. `E^1 x P^2`.
    pub cover_domain: String,
}

pub fn describe(od: &OrbitData) -> Result<QuotientDescriptor> {
    if od.g_plus_1 < 2 {
        return Err(Error::InvalidArgument(format!("need g+1 >= 2, got {}", od.g_plus_1)));
    }
    let base_dim = od.fixed.len() + od.s - 1;
    let fiber_dims: Vec<usize> = od.sizes.iter().map(|&i| i - 1).collect();
    let galois = galois_group(od);
    let mut parts = Vec::new();
    if base_dim > 0 {
        parts.push(format!("E^{base_dim}"));
    }
    parts.extend(fiber_dims.iter().map(|k| format!("P^{k}")));
    if parts.is_empty() {
        parts.push("pt".into());
    }
    Ok(QuotientDescriptor {
        g: od.g(),
        fixed: od.fixed.clone(),
        sizes: od.sizes.clone(),
        s: od.s,
        j_empty: od.j_empty(),
        base_dim,
        fiber_dims,
        galois_order: galois.order(),
        galois,
        d: od.d,
        component_count_of_ker_theta: (od.d * od.d) as u64,
        cover_domain: parts.join(" x "),
    })
}
