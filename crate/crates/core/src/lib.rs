//! Exact torsion-level models of quotients `E^g/Σ` of powers of an elliptic
//! curve by subgroups `Σ ⊆ Σ_{g+1}` generated by simple transpositions.
//!
//! `E` is modeled by `(Q/Z)^2`. From a coprime pair `(n, k)` or an explicit
//! set of transpositions the crate computes the bundle structure of
//! `E^g/Σ`, the Galois group of its étale cover, and lifts of translation
//! automorphisms, and checks the set-level statements (fibers are free
//! orbits, commuting squares) by enumeration over torsion points.

pub mod abelian;
pub mod covers;
pub mod error;
pub mod hj;
pub mod lift;
pub mod parallel;
pub mod report;
pub mod sigma;
pub mod smith;
pub mod structure;
pub mod torus;

pub use abelian::AbelianInvariants;
pub use covers::{big_psi, fiber_bruteforce, verify_cover, CoverPoint, CoverReport, QuotientPoint, SymPoint};
pub use error::{Error, Result};
pub use hj::{hj_expand, verify_word, Expansion, LineBundleRecipe};
pub use lift::{lift_translation, sigma_bar, verify_lift, LiftReport, TranslationDatum};
pub use report::{batch_sweep, run, Mode, Report, RunConfig};
pub use sigma::{epsilon_embed, OrbitData, SigmaSubgroup};
pub use structure::{describe, galois_group, theta_kernel_structure, QuotientDescriptor};
pub use torus::{torsion_subgroup, TorusPoint};
