//! JSON file schemas and CSV number formatting.
//!
//! System file, either explicit matrices or a chain description:
//!
//! ```json
//! {"n": 2, "mass": [[1, 0], [0, 1]], "stiffness": [[2, -1], [-1, 2]]}
//! {"chain": {"masses": [15, 21], "springs": [1000, 2000]}}
//! ```
//!
//! Modal data file, vectors stored column by column:
//!
//! ```json
//! {"k": 1, "eigenvalues": [6.4], "right": [[...]], "left": [[...]]}
//! ```
//!
//! JSON numbers use the shortest representation that parses back to the
//! same `f64`, so files round-trip bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricMatrix};
use crate::modal::{build_chain, canonicalize_left, MassStiffnessSystem, ModalData};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub masses: Vec<f64>,
    pub springs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemFile {
    Matrices {
        n: usize,
        mass: Vec<Vec<f64>>,
        stiffness: Vec<Vec<f64>>,
    },
    Chain {
        chain: ChainSpec,
    },
}

impl SystemFile {
    pub fn from_system(sys: &MassStiffnessSystem) -> Self {
        SystemFile::Matrices {
            n: sys.dim(),
            mass: sys.mass().to_rows(),
            stiffness: sys.stiffness().to_rows(),
        }
    }

    pub fn to_system(&self) -> Result<MassStiffnessSystem> {
        match self {
            SystemFile::Matrices { n, mass, stiffness } => {
                let mass = SymmetricMatrix::from_rows(mass)?;
                let stiffness = SymmetricMatrix::from_rows(stiffness)?;
                if mass.dim() != *n {
                    return Err(Error::DimensionMismatch {
                        context: "system file n",
                        expected: *n,
                        found: mass.dim(),
                    });
                }
                MassStiffnessSystem::new(mass, stiffness)
            }
            SystemFile::Chain { chain } => build_chain(&chain.masses, &chain.springs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalFile {
    pub k: usize,
    pub eigenvalues: Vec<f64>,
    pub right: Vec<Vec<f64>>,
    pub left: Vec<Vec<f64>>,
}

impl ModalFile {
    pub fn from_modal(modal: &ModalData) -> Self {
        ModalFile {
            k: modal.k(),
            eigenvalues: modal.eigenvalues().to_vec(),
            right: modal.right().to_columns(),
            left: modal.left().to_columns(),
        }
    }

    /// Left vectors are rescaled to `<g_i, v_i> = 1` before validation, so
    /// measured left eigenvectors of arbitrary scale are accepted.
    pub fn to_modal(&self) -> Result<ModalData> {
        if self.k != self.eigenvalues.len() || self.k != self.right.len() || self.k != self.left.len() {
            return Err(Error::InvalidInput(format!(
                "k = {} but file holds {} eigenvalues, {} right and {} left vectors",
                self.k,
                self.eigenvalues.len(),
                self.right.len(),
                self.left.len()
            )));
        }
        let left = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(g, v)| canonicalize_left(g, v))
            .collect::<Result<Vec<_>>>()?;
        ModalData::new(
            self.eigenvalues.clone(),
            Matrix::from_columns(&self.right)?,
            Matrix::from_columns(&left)?,
        )
    }
}

/// A mass perturbation file: a bare matrix or `{"delta_mass": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeltaFile {
    Wrapped { delta_mass: Vec<Vec<f64>> },
    Bare(Vec<Vec<f64>>),
}

impl DeltaFile {
    pub fn to_matrix(&self) -> Result<SymmetricMatrix> {
        match self {
            DeltaFile::Wrapped { delta_mass } | DeltaFile::Bare(delta_mass) => SymmetricMatrix::from_rows(delta_mass),
        }
    }
}

/// Formats `x` with `digits` significant digits, in positional notation for
/// moderate magnitudes and scientific notation otherwise.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let exponent = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into a new digit (9.99.. -> 10.0); reformat once
        let reparsed: f64 = s.parse().unwrap_or(x);
        let new_exp = reparsed.abs().log10().floor() as i32;
        if new_exp != exponent {
            let decimals = (digits as i32 - 1 - new_exp).max(0) as usize;
            return format!("{x:.decimals$}");
        }
        s
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}

/// CSV cells carry nine significant digits.
pub fn csv_number(x: f64) -> String {
    format_significant(x, 9)
}
