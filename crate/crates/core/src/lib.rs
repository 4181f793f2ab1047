//! Certified lower bounds on the least eigenvalue of an unobserved mass
//! matrix, computed from left/right modal eigenvectors of a linear elastic
//! system `M x'' + K x = 0`.
//!
//! The pieces, bottom up:
//!
//! - [`linalg`]: dense symmetric eigensolver, Cholesky, SVD, pseudo-inverse.
//! - [`modal`]: the `(M, K)` pencil, modal data with canonical left
//!   eigenvectors `G = M V`, chain builder, perturbations and the kinetic
//!   energy certificate.
//! - [`bounds`]: the bound `F(alpha)`, its validity window, sweeps and
//!   Weyl admissibility of mass perturbations.
//! - [`estimation`]: the surrogate `M' = G V+` and the recommended shift
//!   `alpha = sigma_1(M') / 2`.
//! - [`experiment`]: commands behind the `massbound` binary (file formats,
//!   CSV/JSON/SVG output, the reproduction report).

// `!(x <= tol)` is used on purpose so NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod estimation;
pub mod experiment;
pub mod fixtures;
pub mod formats;
pub mod linalg;
pub mod modal;
pub mod report;
pub mod svg;

pub use bounds::{
    admissible_perturbation, f_alpha, f_alpha_general, shift_invert_spectrum, sweep, validity_window,
    Admissibility, BoundEvaluation, SweepResult, Validity,
};
pub use error::{Error, Result};
pub use estimation::{estimate_mass, recommend_alpha, refine_with_pairs, sigma1_check, MassEstimate};
pub use fixtures::ReferenceSystem;
pub use linalg::{Matrix, SpectrumResult, SymmetricMatrix};
pub use modal::{
    apply_perturbation, build_chain, canonicalize_left, kinetic_energy, left_eigenvectors,
    realizability_certificate, solve_pencil, MassStiffnessSystem, ModalData, Perturbation,
};
