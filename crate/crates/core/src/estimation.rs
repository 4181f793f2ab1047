//! Surrogate mass matrix `M' = G V+` from measured eigenvector pairs.
//!
//! Only the largest singular value of `M'` is used: half of it is the
//! recommended shift for the lower bound. Since `G = M V`, the product
//! `G V+ = M (V V+)` is `M` times an orthogonal projector, so its largest
//! singular value never exceeds that of `M`. For `k < n` the estimate is not
//! symmetric in general.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm, normalize_sign, pseudo_inverse, sigma1, Matrix, SymmetricMatrix};
use crate::modal::ModalData;

/// Slack on `<g, v> = 1` accepted by [`refine_with_pairs`].
pub const CANONICAL_TOLERANCE: f64 = 1e-8;

/// Two unit-normalized right vectors closer than this are the same mode.
pub const DUPLICATE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct MassEstimate {
    pub k: usize,
    pub m_prime: Matrix,
    /// Largest singular value of `m_prime`.
    pub rho: f64,
    /// `rho / 2`.
    pub recommended_alpha: f64,
    left: Matrix,
    right: Matrix,
}

impl MassEstimate {
    pub fn left(&self) -> &Matrix {
        &self.left
    }

    pub fn right(&self) -> &Matrix {
        &self.right
    }
}

/// `M' = G V+` with `rho = sigma_1(M')` and `alpha = rho / 2`.
pub fn estimate_mass(left: &Matrix, right: &Matrix) -> Result<MassEstimate> {
    if left.shape() != right.shape() {
        return Err(Error::DimensionMismatch {
            context: "estimate_mass left/right",
            expected: right.rows() * right.cols(),
            found: left.rows() * left.cols(),
        });
    }
    let (n, k) = right.shape();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("{k} pairs for {n} degrees of freedom")));
    }
    let m_prime = left.matmul(&pseudo_inverse(right)?)?;
    let rho = sigma1(&m_prime)?;
    Ok(MassEstimate {
        k,
        m_prime,
        rho,
        recommended_alpha: 0.5 * rho,
        left: left.clone(),
        right: right.clone(),
    })
}

/// Estimate from the first `k` pairs of `modal`.
pub fn estimate_from_modal(modal: &ModalData, k: usize) -> Result<MassEstimate> {
    let t = modal.truncate(k)?;
    estimate_mass(t.left(), t.right())
}

pub fn recommend_alpha(est: &MassEstimate) -> f64 {
    est.recommended_alpha
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sigma1Check {
    /// `sigma_1(G V+)`.
    pub lhs: f64,
    /// `sigma_1(M)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `sigma_1(g v+) <= sigma_1(M)` for `g = M v`.
pub fn sigma1_check(g: &[f64], v: &[f64], mass: &SymmetricMatrix) -> Result<Sigma1Check> {
    if norm(v) == 0.0 {
        return Err(Error::ZeroVector);
    }
    sigma1_check_stacked(&Matrix::column_vector(g), &Matrix::column_vector(v), mass)
}

/// Stacked variant of [`sigma1_check`] for `k` pairs `G = M V`.
pub fn sigma1_check_stacked(g: &Matrix, v: &Matrix, mass: &SymmetricMatrix) -> Result<Sigma1Check> {
    if v.rows() != mass.dim() || g.shape() != v.shape() {
        return Err(Error::DimensionMismatch {
            context: "sigma1_check",
            expected: mass.dim(),
            found: v.rows(),
        });
    }
    let mv = mass.matmul(v)?;
    let residual = mv.sub(g)?.frobenius_norm();
    let scale = mass.frobenius_norm() * v.frobenius_norm();
    if !(residual <= 1e-8 * scale.max(1.0)) {
        return Err(Error::PreconditionViolated(format!(
            "left vectors differ from M V by {residual:e}"
        )));
    }
    let lhs = sigma1(&g.matmul(&pseudo_inverse(v)?)?)?;
    let rhs = sigma1(&mass.to_matrix())?;
    Ok(Sigma1Check {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-9,
    })
}

fn direction(v: &[f64]) -> Vec<f64> {
    let mut u = linalg::scale(v, 1.0 / norm(v));
    normalize_sign(&mut u);
    u
}

/// Adds one canonically scaled pair (`<g, v> = 1`) and recomputes the
/// estimate with `k + 1` pairs. A right vector pointing along an existing
/// column is rejected.
pub fn refine_with_pairs(existing: &MassEstimate, new_left: &[f64], new_right: &[f64]) -> Result<MassEstimate> {
    let n = existing.right.rows();
    if new_left.len() != n || new_right.len() != n {
        return Err(Error::DimensionMismatch {
            context: "refine_with_pairs",
            expected: n,
            found: new_right.len().max(new_left.len()),
        });
    }
    if norm(new_right) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let inner = dot(new_left, new_right);
    if !((inner - 1.0).abs() <= CANONICAL_TOLERANCE) {
        return Err(Error::PreconditionViolated(format!(
            "new pair is not canonically scaled: <g, v> = {inner}"
        )));
    }
    let candidate = direction(new_right);
    for (column, existing_v) in existing.right.to_columns().iter().enumerate() {
        let d = direction(existing_v);
        let gap = d
            .iter()
            .zip(&candidate)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        if gap <= DUPLICATE_TOLERANCE {
            return Err(Error::DuplicatePair { column });
        }
    }
    let mut left = existing.left.to_columns();
    let mut right = existing.right.to_columns();
    left.push(new_left.to_vec());
    right.push(new_right.to_vec());
    estimate_mass(&Matrix::from_columns(&left)?, &Matrix::from_columns(&right)?)
}

/// Estimates for `k = 1..=modal.k()`, built by successive refinement.
pub fn alpha_progression(modal: &ModalData) -> Result<Vec<MassEstimate>> {
    let mut out = Vec::with_capacity(modal.k());
    let mut est = estimate_from_modal(modal, 1)?;
    out.push(est.clone());
    for i in 1..modal.k() {
        est = refine_with_pairs(&est, &modal.left_vector(i), &modal.right_vector(i))?;
        out.push(est.clone());
    }
    Ok(out)
}
