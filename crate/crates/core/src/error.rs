use thiserror::Error;

/// Errors surfaced by grid construction, state validation, time stepping and
/// the study driver.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed validation (bad grid size, non-positive c, τ that
    /// does not divide the final time, unknown scheme name, ...).
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// A field that must represent real-valued data lost conjugate symmetry.
    #[error("field `{what}` is not real to tolerance (deviation {deviation:.3e})")]
    NonRealField { what: &'static str, deviation: f64 },

    /// A single step produced non-finite coefficients.
    #[error("non-finite coefficients in {what}")]
    NonFinite { what: &'static str },

    /// A time integration blew up; `step` is the 1-based index of the step
    /// whose output first contained NaN or Inf.
    #[error("solution blew up at step {step} (t = {time:.6})")]
    BlowUp { step: usize, time: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
