use thiserror::Error;

/// Errors produced by network construction and admittance evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lambda must be a finite nonzero complex number")]
    ZeroLambda,

    #[error("invalid edge parameters: {0}")]
    InvalidEdgeParams(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ladder size must be at least {min}, got {got}")]
    InvalidSize { min: usize, got: usize },

    /// `L λ² + R λ + D` vanished, so the edge admittance is infinite.
    #[error("edge impedance vanishes at this lambda")]
    ZeroImpedance,

    #[error("edge ({u},{v}) has zero impedance at this lambda (lambda not in the admissible set)")]
    NotInLambdaSet { u: usize, v: usize },

    #[error("Dirichlet problem has no solution")]
    NoSolution,

    #[error("series and rung admittances must be nonzero")]
    MuZero,

    /// `ψ₁^{2n} = 1`; the root formula is undefined and the finite problem
    /// has to go through the linear solver.
    #[error("characteristic root satisfies psi^(2n) = 1")]
    UnitCircleDegeneracy,

    #[error("binomial form is not defined at mu = -4")]
    DegenerateMu,

    #[error("binomial form refuses n = {n} (limit {max})")]
    BinomialOverflow { n: usize, max: usize },

    #[error("gamma lies on the branch cut (negative imaginary axis)")]
    OnCut,

    #[error("gamma must be nonzero")]
    GammaZero,

    #[error("omega = {omega} is outside the admissible range")]
    OutOfRange { omega: f64 },

    #[error("lambda lies in the non-convergent set")]
    NonConvergentInput,

    #[error("need at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("network file: {0}")]
    Schema(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
