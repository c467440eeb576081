//! Numerical study of u_t = c(t) u_xx + λ F(u) with a time-growing diffusion
//! coefficient c(t) ~ t^p: exact spectral linear propagation, Duhamel
//! fixed-point and exponential-integrator solvers, the renormalization-group
//! rescaling flow with its A_n / g_n bookkeeping, the explicit constant chain
//! behind the contraction estimates, and asymptotic diagnostics (decay
//! exponents, self-similar profile distance, mass limits).

pub mod asymptotics;
pub mod certificates;
pub mod error;
pub mod oracle;
pub mod problem;
pub mod rg;
pub mod solver;
pub mod spectral;

pub use asymptotics::{DecayFit, FitWindow};
pub use certificates::{CertificateBundle, InequalityCheck};
pub use error::Error;
pub use problem::{
    classify_criticality, make_problem, rescale_coefficients, CriticalityClass, CriticalityTag,
    DiffusionDescriptor, DiffusionForm, NonlinearitySeries, ProblemSpec,
};
pub use rg::{RGStep, RGTrace};
pub use solver::{SliceDiagnostics, SolverConfig, Trajectory};
pub use spectral::{Grid, GridFunction, ProfileDescriptor, SpectralFunction};

pub type Result<T> = std::result::Result<T, Error>;
