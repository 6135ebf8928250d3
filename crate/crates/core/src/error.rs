use thiserror::Error;

/// Everything that can go wrong while evaluating splittings, running
/// oracles, or building sweeps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("particle {0:?} carries no charge")]
    NeutralParticle(String),
    #[error("magnetic field must be non-negative for charged particles, got {0} T")]
    NegativeField(f64),
    #[error("expected a {expected} value, got {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error(
        "low-speed expansion is singular at the regime boundary (|1 + p_perp^2 - delta^2| = {0:e})"
    )]
    SingularExpansion(f64),
    #[error("high-speed limit needs p_par > 0")]
    ZeroMomentum,
    #[error("spin label must be +1 or -1, got {0}")]
    InvalidSpin(i32),
    #[error("gradient undefined: an eigenvalue vanishes")]
    Degenerate,
    #[error("eigensolver did not converge after {0} sweeps")]
    NonConvergence(usize),
    #[error("box half-width {halfwidth} too small: level {level} shifts by {shift:e} when the box doubles")]
    InsufficientBox {
        halfwidth: f64,
        level: usize,
        shift: f64,
    },
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("curve {curve:?} at x = {x}: {source}")]
    Evaluation {
        curve: String,
        x: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Short machine-readable category, used for the CLI `error:<category>:` prefix.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::NeutralParticle(_) => "neutral-particle",
            Error::NegativeField(_) => "negative-field",
            Error::KindMismatch { .. } => "kind-mismatch",
            Error::SingularExpansion(_) => "singular-expansion",
            Error::ZeroMomentum => "division-by-zero",
            Error::InvalidSpin(_) => "invalid-spin",
            Error::Degenerate => "degenerate",
            Error::NonConvergence(_) => "non-convergence",
            Error::InsufficientBox { .. } => "insufficient-box",
            Error::InvalidSweep(_) => "invalid-sweep",
            Error::Evaluation { source, .. } => source.category(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
