use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Clifford dimension {0} out of range 1..=12")]
    CliffordDimension(usize),

    #[error("direction index {index} out of range 1..={dim}")]
    DirectionIndex { index: usize, dim: usize },

    #[error("gamma_{index} has no eigenvalue {sign}i in this representation")]
    EmptyEigenspace { index: usize, sign: i8 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate mode system: kappa = 0 (lambda^2 = mu^2)")]
    DegenerateKappa,

    #[error("step size underflow at {at} (h = {step:e})")]
    StepSizeUnderflow { at: f64, step: f64 },

    #[error("integration exceeded {0} steps")]
    TooManySteps(usize),

    #[error("fit window [{ra}, {rb}] not covered by trajectory grid [{lo}, {hi}]")]
    FitWindow { ra: f64, rb: f64, lo: f64, hi: f64 },

    #[error("non-integrable configuration: {0}")]
    NonIntegrable(String),

    #[error("quadrature failed to reach tolerance: estimate {value:e}, error {error:e}")]
    QuadratureTolerance { value: f64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
