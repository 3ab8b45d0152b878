pub mod analytic;
pub mod classical;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod floquet;
pub mod fourier;
pub mod hilbert;
pub mod spectral;

pub use error::{Error, Result};
