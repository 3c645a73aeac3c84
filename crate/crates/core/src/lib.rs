//! Spectrum of the Cos^λ transform on homogeneous line bundles over the
//! real and complex Hermitian Grassmannians, with independent numerical
//! oracles (torus quadrature, Haar Monte Carlo, projective eigenfunctions).

pub mod cli;
pub mod error;
pub mod groupops;
pub mod oracle;
pub mod rootdata;
pub mod specialfn;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use rootdata::{make_case, CaseParams, Field};
pub use specialfn::Status;
pub use spectrum::SpectralValue;
pub use weights::Weight;
