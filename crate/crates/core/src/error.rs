use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A problem definition violates one of the standing hypotheses.
    /// `hypothesis` is the short label ("H1", "H2", "H3", "lambda").
    #[error("invalid hypothesis ({hypothesis}): {message}")]
    InvalidHypothesis { hypothesis: &'static str, message: String },

    /// Requested quadrature tolerance could not be reached.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// A solution left the working analyticity region |u| < rho_guard.
    #[error("radius exceeded at t = {t}: sup|u| = {sup_abs:.6e} >= guard {guard:.6e}")]
    RadiusExceeded { sup_abs: f64, guard: f64, t: f64 },

    /// Picard iteration failed to contract within the configured budget.
    #[error("no contraction after {iterations} iterations (last residual {residual:.6e})")]
    NoContraction { iterations: usize, residual: f64 },

    /// Strict-mode RG step received data outside its admissibility ball.
    #[error("inadmissible data at step {step}: norm {norm:.6e} >= eps_n {eps_n:.6e}")]
    InadmissibleData { step: u32, norm: f64, eps_n: f64 },

    /// The delta parameter violates delta in (0,1) or delta-1 > p+3-alpha(p+1).
    #[error("invalid delta {delta}: admissible interval is ({lower}, 1)")]
    InvalidDelta { delta: f64, lower: f64 },

    /// A data series is unusable for the requested fit.
    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    /// A sequence shows no sign of convergence to extrapolate.
    #[error("non-convergent sequence: {0}")]
    NonConvergent(String),

    /// Grid construction or grid compatibility failure.
    #[error("grid error: {0}")]
    Grid(String),

    /// An RG flow aborted at a definite step.
    #[error("rg step {step} failed: {source}")]
    RgStepFailed {
        step: u32,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn hypothesis(label: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidHypothesis { hypothesis: label, message: message.into() }
    }
}
