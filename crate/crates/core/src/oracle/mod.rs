//! Independent numerical checks of the spectrum.
//!
//! Nothing here calls into the closed-form spectrum: every estimate is
//! produced by integrating over K, over the torus of a KAK decomposition, or
//! over the unit sphere, and is compared against `spectrum` only by callers.

mod montecarlo;
mod projective;
mod torus;
mod transform;

pub use montecarlo::{mc_mean, McStats, BATCH_SIZE, MAX_REJECTION_RATE};
pub use projective::{projective_eigen_oracle, ProjectiveMethod};
pub use torus::{gauss_legendre_unit, torus_eta_initial, torus_integral, MAX_NODES_PER_AXIS};
pub use transform::{
    check_section, equivariance_check, mc_transform_at, EquivarianceReport, EquivariancePoint,
};

use num_complex::Complex64;
use serde::Serialize;

/// Error estimate attached to an oracle value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Uncertainty {
    /// One standard error of a Monte-Carlo mean.
    StdError(f64),
    /// |Q_N − Q_2N| for a quadrature rule.
    Bound(f64),
}

impl Uncertainty {
    pub fn value(self) -> f64 {
        match self {
            Uncertainty::StdError(v) | Uncertainty::Bound(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub estimate: Complex64,
    pub uncertainty: Uncertainty,
    pub n_samples: u64,
    pub seed: u64,
    pub rejected: u64,
}

impl OracleResult {
    /// Number of uncertainty units separating the estimate from `target`.
    pub fn deviation(&self, target: Complex64) -> f64 {
        (self.estimate - target).norm() / self.uncertainty.value()
    }
}
