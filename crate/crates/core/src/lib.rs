//! Classical mechanics on complex Hilbert space, side by side with its
//! phase-space form.
//!
//! The crate pairs an exact symbolic layer (polynomial observables, the
//! star/Moyal and odot products and brackets, Weyl quantization and symbols)
//! with spectrally accurate grid numerics (the discrete Weyl-Wigner
//! transform pair, quasidensity operators built from classical densities,
//! and time propagation in both pictures with cross-validation).

pub mod error;
pub mod symbolic;

pub use error::{Error, Result};
