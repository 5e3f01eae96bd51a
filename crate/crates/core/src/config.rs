//! Numerical tolerances used throughout the pipeline.
//!
//! Every threshold in the crate is routed through [`Tolerances`] so that runs
//! are reproducible and the cutoffs show up in reports. The defaults are tuned
//! for the desk-scale problems this crate targets (ambient dimension <= 200,
//! 64-bit floats): conditioning is benign and the gaps between "zero" and
//! "structurally nonzero" quantities are many orders of magnitude wide.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max-abs residual allowed when a bracket is expanded in a basis.
    pub closure: f64,
    /// Relative tolerance for algebraic identity checks.
    pub identity: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank_rel: f64,
    /// Einstein certification: Ricci residual must stay below
    /// `certification_rel * |lambda|`.
    pub certification_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            closure: 1e-10,
            identity: 1e-9,
            rank_rel: 1e-8,
            certification_rel: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("closure", self.closure),
            ("identity", self.identity),
            ("rank_rel", self.rank_rel),
            ("certification_rel", self.certification_rel),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}
