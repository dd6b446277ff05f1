use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("state is not normalised (|ψ|² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("lambda {lambda} is smaller than the largest singular value {sigma_max}")]
    LambdaTooSmall { lambda: f64, sigma_max: f64 },

    #[error("shift mu = {mu} leaves the evolution with norm {norm} > 1")]
    ShiftTooSmall { mu: f64, norm: f64 },

    #[error("matrix is numerically zero (σ_max = {0})")]
    ZeroMatrix(f64),

    #[error("operator norm exceeds 1: 1 - A†A has eigenvalue {0}")]
    NormTooLarge(f64),

    #[error("rank(1 - A†A) = {rank} exceeds the {m} auxiliary dimensions")]
    RankTooLarge { rank: usize, m: usize },

    #[error("matrix is singular (|det| = {0})")]
    Singular(f64),

    #[error("dimension {0} exceeds the supported maximum of 16")]
    DimensionTooLarge(usize),

    #[error("unsupported gate for this pass: {0}")]
    UnsupportedGate(String),

    #[error("circuit parse error on line {line}: {msg}")]
    CircuitParse { line: usize, msg: String },

    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),

    #[error("invalid confusion matrix: {0}")]
    BadConfusion(String),

    #[error("no shots landed in the {{|0>, |1>}} subspace")]
    EmptyPostselection,
}
