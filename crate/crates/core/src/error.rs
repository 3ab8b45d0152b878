use serde::Serialize;
use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant carries enough context to be embedded verbatim in the CLI
/// error record.
#[derive(Debug, Error, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Error {
    #[error("momentum quantum number {n} outside basis range [-{cutoff}, {cutoff}]")]
    OutOfRange { n: i64, cutoff: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state is not normalized: |psi|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bessel J_{order}({x}) outside supported envelope |order| <= 1e6, |x| <= 1e4")]
    BesselEnvelope { order: i64, x: f64 },

    #[error("kick factor under-resolved: Fourier tail above order {order} is {tail:e} (> 1e-12) on {samples} samples")]
    Aliasing { order: usize, tail: f64, samples: usize },

    #[error("tan pole: |V/2hbar| within 1e-3 of pi/2 at theta samples {indices:?}")]
    TanPole { indices: Vec<usize> },

    #[error("diagonalization failed: residual {residual:e} (orthonormality {orthonormality:e}, unitarity deviation {unitarity:e})")]
    Diagonalization { residual: f64, orthonormality: f64, unitarity: f64 },

    #[error("hermitian scan found {found} of {expected} roots (unresolved near poles: {unresolved}; degenerate: {degenerate})")]
    MissedRoots { found: usize, expected: usize, unresolved: usize, degenerate: usize },

    #[error("{what}: imaginary residue {residue:e} exceeds {bound:e}")]
    ImaginaryResidue { what: &'static str, residue: f64, bound: f64 },

    #[error("OTOC forms disagree at j = {j}: commutator norm {commutator}, matrix-element sum {elements} (deviation {deviation:e})")]
    OtocMismatch { j: i64, commutator: f64, elements: f64, deviation: f64 },

    #[error("resonant rotation angle {angle}: closed form undefined, use the numeric route")]
    Resonant { angle: f64 },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "out_of_range",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::NotNormalized { .. } => "not_normalized",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::BesselEnvelope { .. } => "bessel_envelope",
            Error::Aliasing { .. } => "aliasing",
            Error::TanPole { .. } => "tan_pole",
            Error::Diagonalization { .. } => "diagonalization",
            Error::MissedRoots { .. } => "missed_roots",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::OtocMismatch { .. } => "otoc_mismatch",
            Error::Resonant { .. } => "resonant",
            Error::Config { .. } => "config",
            Error::Io { .. } => "io",
        }
    }
}
