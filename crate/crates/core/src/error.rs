use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("norm is not polyhedral; its unit ball has no finite vertex set")]
    NotPolyhedral,

    #[error("point {point:?} admits no decomposition over the cone family")]
    NotDecomposable { point: Vec<f64> },

    #[error("translated cones do not intersect for tuple {xi:?}")]
    EmptyIntersection {
        xi: Vec<Vec<f64>>,
        /// Per-cone functionals `k_ω` with `Σ k_ω = 0`, `k_ω·g ≥ 0` on the
        /// generators of `C_ω` and `Σ k_ω·ξ_ω > 0`.
        certificate: Vec<Vec<f64>>,
    },

    #[error("cone family is not generating: {0}")]
    NotGenerating(String),

    #[error("cone family is not coadditive: {0}")]
    NotCoadditive(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("witness not found: {0}")]
    WitnessNotFound(String),

    #[error("solver error: {0}")]
    Solver(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_)
            | Error::DimensionMismatch { .. }
            | Error::NotPolyhedral
            | Error::Precondition(_) => 2,
            Error::NotDecomposable { .. }
            | Error::EmptyIntersection { .. }
            | Error::NotGenerating(_)
            | Error::NotCoadditive(_) => 1,
            Error::Solver(_) | Error::WitnessNotFound(_) => 3,
        }
    }
}
