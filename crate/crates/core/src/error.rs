use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LrkError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Both the diagonal and the pairing entry of a momentum block vanish, so
    /// the Bogoliubov angle is undefined.
    #[error("degenerate mode at k = {k}: mu + cos k = {eps:e}, delta * g = {pairing:e}")]
    DegenerateMode { k: f64, eps: f64, pairing: f64 },

    #[error("site list spans separation {needed}, but correlator table only reaches {available}")]
    SiteRange { needed: usize, available: usize },

    #[error("non-physical spectrum: eigenvalue {value} outside [0, 1]")]
    NonPhysicalSpectrum { value: f64 },

    #[error("matrix not hermitian: defect {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("singular matrix: condition number {condition:e}")]
    SingularMatrix { condition: f64 },

    #[error("expected a real result, imaginary part {imag:e}")]
    NonReal { imag: f64 },

    #[error("scaling fit needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("oracle: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, LrkError>;
