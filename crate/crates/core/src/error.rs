use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// ν < 0, or a non-finite order or argument.
    #[error("domain error: {0}")]
    Domain(String),
    /// The result is too large for the working precision.
    #[error("overflow: |I_nu(z)| exceeds the largest finite value")]
    Overflow,
    /// The uniform expansion was asked to evaluate on its turning-point line,
    /// where 1 + (z/ν)² is a non-positive real.
    #[error("uniform expansion evaluated on the turning-point line (z/nu = {0})")]
    TurningPoint(num_complex::Complex64),
    /// The backward recurrence would need more than
    /// [`crate::recurrence::MAX_STEPS`] steps.
    #[error("backward recurrence would need {0} steps")]
    RecurrenceTooLong(f64),
}
