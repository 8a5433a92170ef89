use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} is not a power of two >= 16")]
    BadGridSize(usize),

    #[error("non-finite sample value at index {0}")]
    NonFinite(usize),

    #[error("function has nonzero mean {0:.3e} (tolerance {1:.1e})")]
    NonZeroMean(f64, f64),

    #[error("negative Sobolev norm requires zero mean, got mean {0:.3e}")]
    NegativeNormMean(f64),

    #[error("input is not odd: even part has norm {0:.3e}")]
    NotOdd(f64),

    #[error("ODE integrator failed to reach tolerance (step underflow at x = {0:.6})")]
    StepUnderflow(f64),

    #[error("ODE integrator exceeded {0} steps")]
    TooManySteps(usize),

    #[error("bracket exhaustion while locating eigenvalue index {index}: {detail}")]
    Bracketing { index: usize, detail: String },

    #[error("norming constant undefined: |phi'(1, mu_{0})| below 1e-14, mu is not a Dirichlet eigenvalue")]
    DegenerateNorming(usize),

    #[error("eigenvalue gradient undefined: gap {0} is closed (degenerate eigenvalue)")]
    DegenerateEigenvalue(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("auxiliary solution v is not strictly positive (min {0:.3e}); inversion failed numerically")]
    NonPositiveV(f64),

    #[error("ground state is not strictly positive (min {0:.3e})")]
    NonPositiveGroundState(f64),

    #[error("embedding invalid: max |h'| = {0:.12} exceeds 1")]
    ProfileSlope(f64),

    #[error("gap-map inversion did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("Jacobian is rank deficient (rank {rank} of {cols})")]
    RankDeficient { rank: usize, cols: usize },

    #[error("spectral invariant violated: {0}")]
    Invariant(String),

    #[error("unknown spectral backend '{0}'")]
    UnknownBackend(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
