use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical or configuration parameter violates its constraint.
    /// Carries the parameter name and the constraint it failed.
    #[error("invalid parameter `{name}`: {constraint} (got {value})")]
    InvalidParameter {
        name: String,
        constraint: &'static str,
        value: f64,
    },

    #[error("envelopes are sampled on different time grids")]
    GridMismatch,

    #[error("envelope contains non-finite samples")]
    NonFiniteSamples,

    #[error("empty frequency grid")]
    EmptyGrid,

    #[error(
        "pulse duration not resolvable on this grid: dt = {dt} but FWHM/8 = {limit}; \
         use a finer grid or a longer pulse"
    )]
    UnresolvedDuration { dt: f64, limit: f64 },

    #[error(
        "pulse clipped by the window edges: relative tail mass {tail_mass:.3e} exceeds 1e-8; \
         widen the time window"
    )]
    PulseClipped { tail_mass: f64 },

    #[error(
        "step size too coarse: max per-step nonlinear phase {max_phase:.3} rad exceeds 0.5; \
         increase n_steps to at least {suggested_steps}"
    )]
    StepTooCoarse {
        max_phase: f64,
        suggested_steps: usize,
    },

    #[error("Fock truncation too small: norm deficit {deficit:.3e} exceeds {limit:.0e}")]
    TruncationTooSmall { deficit: f64, limit: f64 },

    #[error("coherent amplitude |alpha| = {value} outside the supported range (<= {limit})")]
    AmplitudeTooLarge { value: f64, limit: f64 },

    #[error("undefined on a zero envelope")]
    ZeroEnvelope,

    #[error("scenario configuration error: {0}")]
    Config(String),

    #[error("scenario rejected by the regime check (pass --force to run anyway):\n{report}")]
    RegimeRejected { report: String },

    #[error("table contains a non-finite value in column `{column}`")]
    NonFiniteTableValue { column: String },

    #[error("malformed table file: {0}")]
    TableParse(String),

    #[error("bad envelope file: {0}")]
    EnvelopeParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: impl Into<String>, constraint: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            constraint,
            value,
        }
    }
}
