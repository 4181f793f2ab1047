//! Mass/stiffness pencils and their modal data.
//!
//! Right eigenvectors are mass normalized (`V^T M V = I`) and the left
//! eigenvectors are carried in their canonical scale `G = M V`, which is the
//! scale fixed by `<g_i, v_i> = 1`.

use crate::error::{Error, Result};
use crate::linalg::{self, cholesky, dot, norm, normalize_sign, sym_eigen, Matrix, SymmetricMatrix};

/// Tolerance on `G^T V = I` when modal data is assembled.
pub const BIORTHOGONALITY_TOLERANCE: f64 = 1e-8;

/// A linear elastic system `M x'' + K x = 0` with SPD mass.
#[derive(Debug, Clone, PartialEq)]
pub struct MassStiffnessSystem {
    mass: SymmetricMatrix,
    stiffness: SymmetricMatrix,
}

impl MassStiffnessSystem {
    /// Fails if the dimensions differ or the mass matrix is not SPD.
    pub fn new(mass: SymmetricMatrix, stiffness: SymmetricMatrix) -> Result<Self> {
        if mass.dim() != stiffness.dim() {
            return Err(Error::DimensionMismatch {
                context: "mass/stiffness",
                expected: mass.dim(),
                found: stiffness.dim(),
            });
        }
        cholesky(&mass)?;
        Ok(MassStiffnessSystem { mass, stiffness })
    }

    pub fn mass(&self) -> &SymmetricMatrix {
        &self.mass
    }

    pub fn stiffness(&self) -> &SymmetricMatrix {
        &self.stiffness
    }

    pub fn dim(&self) -> usize {
        self.mass.dim()
    }
}

/// Eigenvalues with their right and left eigenvectors, possibly truncated to
/// the first `k` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalData {
    eigenvalues: Vec<f64>,
    right: Matrix,
    left: Matrix,
}

impl ModalData {
    /// Checks shapes, ascending eigenvalues and `G^T V = I`.
    pub fn new(eigenvalues: Vec<f64>, right: Matrix, left: Matrix) -> Result<Self> {
        let k = eigenvalues.len();
        if k == 0 {
            return Err(Error::Empty);
        }
        if right.cols() != k {
            return Err(Error::DimensionMismatch {
                context: "right eigenvector count",
                expected: k,
                found: right.cols(),
            });
        }
        if left.shape() != right.shape() {
            return Err(Error::DimensionMismatch {
                context: "left eigenvector shape",
                expected: right.rows() * right.cols(),
                found: left.rows() * left.cols(),
            });
        }
        if right.rows() < k {
            return Err(Error::InvalidInput(format!(
                "{k} modal pairs for a system with {} degrees of freedom",
                right.rows()
            )));
        }
        if let Some(i) = eigenvalues.windows(2).position(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidInput(format!(
                "eigenvalues not ascending at index {}",
                i + 1
            )));
        }
        let deviation = left
            .transpose()
            .matmul(&right)?
            .max_abs_diff(&Matrix::identity(k));
        if !(deviation <= BIORTHOGONALITY_TOLERANCE) {
            return Err(Error::PreconditionViolated(format!(
                "G^T V deviates from the identity by {deviation:e}"
            )));
        }
        Ok(ModalData {
            eigenvalues,
            right,
            left,
        })
    }

    /// Modal data from mass-normalized right eigenvectors, with `G = M V`.
    pub fn from_right(mass: &SymmetricMatrix, eigenvalues: Vec<f64>, right: Matrix) -> Result<Self> {
        let left = left_eigenvectors(mass, &right)?;
        ModalData::new(eigenvalues, right, left)
    }

    /// Number of retained pairs.
    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.right.rows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn right(&self) -> &Matrix {
        &self.right
    }

    pub fn left(&self) -> &Matrix {
        &self.left
    }

    pub fn right_vector(&self, i: usize) -> Vec<f64> {
        self.right.column(i)
    }

    pub fn left_vector(&self, i: usize) -> Vec<f64> {
        self.left.column(i)
    }

    /// Keeps the first `k` pairs.
    pub fn truncate(&self, k: usize) -> Result<ModalData> {
        if k == 0 || k > self.k() {
            return Err(Error::InvalidInput(format!(
                "truncation level {k} outside 1..={}",
                self.k()
            )));
        }
        Ok(ModalData {
            eigenvalues: self.eigenvalues[..k].to_vec(),
            right: self.right.leading_columns(k),
            left: self.left.leading_columns(k),
        })
    }
}

/// A modification `(dM, dK)` of a system; `dK` defaults to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub delta_mass: SymmetricMatrix,
    pub delta_stiffness: Option<SymmetricMatrix>,
}

impl Perturbation {
    pub fn mass_only(delta_mass: SymmetricMatrix) -> Self {
        Perturbation {
            delta_mass,
            delta_stiffness: None,
        }
    }
}

/// Positive kinetic energy certificate: the least mass eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realizability {
    pub realizable: bool,
    pub least_eigenvalue: f64,
}

/// Modified system with its modal solve.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedSystem {
    pub system: MassStiffnessSystem,
    pub modal: ModalData,
    pub certificate: Realizability,
}

/// Solves `K v = lambda M v` through `M = L L^T` and the standard problem
/// `L^-1 K L^-T y = lambda y`, with `v = L^-T y` rescaled to `v^T M v = 1`.
pub fn solve_pencil(sys: &MassStiffnessSystem) -> Result<ModalData> {
    let n = sys.dim();
    let l = cholesky(&sys.mass)?;
    let k = sys.stiffness.to_matrix();

    // X = L^-1 K, then C = L^-1 X^T = L^-1 K L^-T.
    let x_cols: Vec<Vec<f64>> = (0..n).map(|j| l.solve_lower(&k.column(j))).collect();
    let x = Matrix::from_columns(&x_cols)?;
    let xt = x.transpose();
    let c_cols: Vec<Vec<f64>> = (0..n).map(|j| l.solve_lower(&xt.column(j))).collect();
    let reduced = SymmetricMatrix::symmetrize(&Matrix::from_columns(&c_cols)?)?;

    let spec = sym_eigen(&reduced)?;
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = l.solve_upper_transpose(&spec.vector(i));
        let m_norm = sys.mass.quadratic_form(&v)?.sqrt();
        v.iter_mut().for_each(|x| *x /= m_norm);
        normalize_sign(&mut v);
        columns.push(v);
    }
    let right = Matrix::from_columns(&columns)?;
    ModalData::from_right(&sys.mass, spec.values, right)
}

/// Canonical left eigenvectors `G = M V` for mass-normalized `V`.
pub fn left_eigenvectors(mass: &SymmetricMatrix, right: &Matrix) -> Result<Matrix> {
    if right.rows() != mass.dim() {
        return Err(Error::DimensionMismatch {
            context: "left eigenvectors",
            expected: mass.dim(),
            found: right.rows(),
        });
    }
    mass.matmul(right)
}

/// Rescales an arbitrarily scaled left eigenvector so that `<g, v> = 1`.
pub fn canonicalize_left(raw_left: &[f64], right: &[f64]) -> Result<Vec<f64>> {
    if raw_left.len() != right.len() {
        return Err(Error::DimensionMismatch {
            context: "canonicalize_left",
            expected: right.len(),
            found: raw_left.len(),
        });
    }
    let inner = dot(raw_left, right);
    if !(inner.abs() >= 1e-14 * norm(raw_left) * norm(right)) || inner == 0.0 {
        return Err(Error::DegenerateScaling { inner });
    }
    Ok(linalg::scale(raw_left, 1.0 / inner))
}

/// `1/2 <x', M x'>`.
pub fn kinetic_energy(mass: &SymmetricMatrix, velocity: &[f64]) -> Result<f64> {
    Ok(0.5 * mass.quadratic_form(velocity)?)
}

/// Realizable iff the least eigenvalue of the mass matrix is positive.
pub fn realizability_certificate(mass: &SymmetricMatrix) -> Result<Realizability> {
    let least = sym_eigen(mass)?.min();
    Ok(Realizability {
        realizable: least > 0.0,
        least_eigenvalue: least,
    })
}

/// Spring-mass chain with `M = diag(masses)` and the stiffness pattern
///
/// ```text
/// [ k1   -k1                      ]
/// [ -k1  k1+k2  -k2               ]
/// [       ...    ...    ...       ]
/// [             -k(n-1)   kn      ]
/// ```
///
/// The last diagonal entry is `kn` alone, not `k(n-1) + kn`.
pub fn build_chain(masses: &[f64], springs: &[f64]) -> Result<MassStiffnessSystem> {
    let n = masses.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "a chain needs at least 2 masses, got {n}"
        )));
    }
    if springs.len() != n {
        return Err(Error::DimensionMismatch {
            context: "chain springs",
            expected: n,
            found: springs.len(),
        });
    }
    if let Some(m) = masses.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(Error::InvalidInput(format!("non-positive mass {m}")));
    }
    if let Some(k) = springs.iter().find(|k| !(**k > 0.0 && k.is_finite())) {
        return Err(Error::InvalidInput(format!("non-positive spring {k}")));
    }
    let stiffness = SymmetricMatrix::from_lower_fn(n, |i, j| {
        if i == j {
            match i {
                0 => springs[0],
                _ if i == n - 1 => springs[n - 1],
                _ => springs[i - 1] + springs[i],
            }
        } else if i == j + 1 {
            -springs[j]
        } else {
            0.0
        }
    })?;
    MassStiffnessSystem::new(SymmetricMatrix::diagonal(masses)?, stiffness)
}

/// Forward solve of `(K + dK) V* = (M + dM) V* L*`.
///
/// Fails with [`Error::NotPositiveDefinite`] when `M + dM` is no longer SPD.
pub fn apply_perturbation(sys: &MassStiffnessSystem, p: &Perturbation) -> Result<PerturbedSystem> {
    let mass = sys.mass.add(&p.delta_mass)?;
    let stiffness = match &p.delta_stiffness {
        Some(dk) => sys.stiffness.add(dk)?,
        None => sys.stiffness.clone(),
    };
    let certificate = realizability_certificate(&mass)?;
    let system = MassStiffnessSystem::new(mass, stiffness)?;
    let modal = solve_pencil(&system)?;
    Ok(PerturbedSystem {
        system,
        modal,
        certificate,
    })
}
