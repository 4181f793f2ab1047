//! The two five-degree-of-freedom spring-mass chains used as reference
//! problems. Both share the stiffness `k_i = 1000 i`; the stiffness matrix
//! is nonsingular, so every pencil eigenvalue is strictly positive.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::modal::{build_chain, MassStiffnessSystem};

pub const SPRINGS: [f64; 5] = [1000.0, 2000.0, 3000.0, 4000.0, 5000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceSystem {
    M1,
    M2,
}

impl ReferenceSystem {
    pub const ALL: [ReferenceSystem; 2] = [ReferenceSystem::M1, ReferenceSystem::M2];

    pub fn name(self) -> &'static str {
        match self {
            ReferenceSystem::M1 => "M1",
            ReferenceSystem::M2 => "M2",
        }
    }

    pub fn masses(self) -> [f64; 5] {
        match self {
            ReferenceSystem::M1 => [15.0, 21.0, 24.0, 27.0, 30.0],
            ReferenceSystem::M2 => [30.0, 170.0, 180.0, 190.0, 200.0],
        }
    }

    /// Published lower bound obtained with three eigenvector pairs.
    pub fn published_bound_k3(self) -> f64 {
        match self {
            ReferenceSystem::M1 => 6.8,
            ReferenceSystem::M2 => 18.22,
        }
    }

    pub fn system(self) -> MassStiffnessSystem {
        build_chain(&self.masses(), &SPRINGS).expect("reference chain is valid")
    }
}

impl fmt::Display for ReferenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M1" | "m1" => Ok(ReferenceSystem::M1),
            "M2" | "m2" => Ok(ReferenceSystem::M2),
            other => Err(Error::InvalidInput(format!("unknown system {other:?}"))),
        }
    }
}
