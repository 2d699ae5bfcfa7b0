use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {index} is negative ({value:e})")]
    NegativeEntry { index: usize, value: f64 },

    #[error("cannot normalize: sum = {sum}")]
    NotNormalizable { sum: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("reference spectrum has a zero entry at index {index}")]
    RankDeficientReference { index: usize },

    #[error("matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("alpha = {0} out of range (need alpha > 0, alpha != 1)")]
    AlphaOutOfRange(f64),

    #[error("finite-difference step h = {0} outside [1e-4, 1e-1]")]
    StepOutOfRange(f64),

    #[error("negative polynomial root {0}")]
    NegativeRoot(f64),

    #[error("expected {expected} roots for degree {n}, got {got}")]
    RootCount { n: usize, expected: usize, got: usize },

    #[error("degenerate denominator in inequality slack")]
    DegenerateDenominator,

    #[error("search budget exceeded after {iterations} iterations (best slack {best_slack})")]
    SearchBudgetExceeded {
        iterations: usize,
        best_slack: f64,
        best_roots: Vec<f64>,
    },

    #[error("x must be positive, got {0}")]
    NonpositiveX(f64),

    #[error("block length {ell} invalid for chain of {n} sites")]
    BlockTooLarge { ell: usize, n: usize },

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("quadrature did not converge")]
    QuadratureNoConvergence,

    #[error("no sign change on ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable variant name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NotNormalizable { .. } => "NotNormalizable",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::RankDeficientReference { .. } => "RankDeficientReference",
            Error::NotStochastic(_) => "NotStochastic",
            Error::AlphaOutOfRange(_) => "AlphaOutOfRange",
            Error::StepOutOfRange(_) => "StepOutOfRange",
            Error::NegativeRoot(_) => "NegativeRoot",
            Error::RootCount { .. } => "RootCount",
            Error::DegenerateDenominator => "DegenerateDenominator",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::NonpositiveX(_) => "NonpositiveX",
            Error::BlockTooLarge { .. } => "BlockTooLarge",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::UnsupportedCombination(_) => "UnsupportedCombination",
            Error::DomainError(_) => "DomainError",
            Error::QuadratureNoConvergence => "QuadratureNoConvergence",
            Error::NoSignChange { .. } => "NoSignChange",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// Failures of a numerical procedure on valid input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDenominator
                | Error::SearchBudgetExceeded { .. }
                | Error::NoConvergence { .. }
                | Error::QuadratureNoConvergence
                | Error::NoSignChange { .. }
        )
    }
}
