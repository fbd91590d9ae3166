use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Scalar field of the underlying space. Complex vectors of `ℂ^d` are stored
/// as `2d` interleaved real coordinates `(re₁, im₁, re₂, im₂, …)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Number of real coordinates of a vector of `K^d`.
    pub fn real_dim(self, d: usize) -> usize {
        match self {
            Field::Real => d,
            Field::Complex => 2 * d,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "real" | "R" => Ok(Field::Real),
            "complex" | "C" => Ok(Field::Complex),
            other => Err(Error::Unsupported(format!("field `{other}` (expected real or complex)"))),
        }
    }
}
