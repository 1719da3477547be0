//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("field is not a valid density: {0}")]
    NotDensity(String),

    #[error("grid does not resolve {what}: {samples:.2} samples per standard deviation (need >= 8)")]
    UnresolvedScale { what: &'static str, samples: f64 },

    #[error("unsupported derivative order {0} (allowed: 1, 2, 4)")]
    UnsupportedOrder(usize),

    #[error("series term order {0} beyond implemented coefficient table (allowed: 0, 1, 2)")]
    SeriesOrder(usize),

    #[error("potential degree {0} exceeds maximum 6")]
    PotentialDegree(usize),

    #[error("truncation order {0} beyond implemented corrections (allowed: 0, 1, 2)")]
    TruncationOrder(u8),

    #[error("invalid evolution config: {0}")]
    InvalidConfig(String),

    #[error("stability guard violated: dt * rhs spectral radius estimate = {0:.3} >= 2.8")]
    StabilityGuard(f64),

    #[error("advection displacement {displacement:.3} exceeds half the domain {half_domain:.3} per substep")]
    CflExceeded { displacement: f64, half_domain: f64 },

    #[error("monitor {monitor} exceeded 1e6 at t = {time}; aborting propagation")]
    MonitorBlowup { monitor: &'static str, time: f64 },

    #[error("degenerate initial state rejected by the propagator: {0}")]
    DegenerateState(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("snapshot format error: {0}")]
    Snapshot(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
