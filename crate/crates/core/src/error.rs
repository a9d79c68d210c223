use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("good decoherence does not hold at N = {n}, m = {m}: s^(2(N-m)) = {tail:e} exceeds {threshold:e} * s^(2m)")]
    GoodDecoherenceViolation {
        n: u32,
        m: u32,
        tail: f64,
        threshold: f64,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{measure} never reaches the target {target} bits for m <= {n}")]
    NoPlateau { measure: String, target: f64, n: u32 },

    #[error("plateau entropy {entropy:e} is too small to normalize by")]
    PlateauDegenerate { entropy: f64 },

    #[error("numerical convergence failure: {0}")]
    ConvergenceFailure(String),

    #[error("s = 0 maps to an infinite effective decoherence time (perfect records)")]
    PerfectRecords,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. }
            | Error::InvalidParameter(_)
            | Error::GoodDecoherenceViolation { .. }
            | Error::ResourceLimit(_)
            | Error::PerfectRecords
            | Error::Config(_) => 1,
            Error::NoPlateau { .. }
            | Error::PlateauDegenerate { .. }
            | Error::ConvergenceFailure(_) => 2,
            Error::Io(_) => 3,
        }
    }

    /// Short machine-readable tag, used in the `status` column of flagged rows.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::GoodDecoherenceViolation { .. } => "good_decoherence_violation",
            Error::ResourceLimit(_) => "resource_limit",
            Error::NoPlateau { .. } => "no_plateau",
            Error::PlateauDegenerate { .. } => "plateau_degenerate",
            Error::ConvergenceFailure(_) => "convergence_failure",
            Error::PerfectRecords => "perfect_records",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}
