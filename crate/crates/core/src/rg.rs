//! The renormalization-group operator: solve the level-n problem over one
//! window [1, L], then rescale space by L^{(p+1)/2} and amplitude by the same
//! factor. The linear part has the closed frequency-space form
//! ℱ(R⁰_{L,n} g)(w) = ĝ(L^{-(p+1)/2} w) e^{-w² s_n(L)/L^{p+1}} and is applied
//! exactly (frequency resampling by trigonometric interpolation plus the
//! Gaussian multiplier), never by time-stepping.

use std::io::{self, Write};

use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::certificates::{self, r0_gaussian_exponent};
use crate::error::Error;
use crate::problem::{rescale_coefficients, DiffusionDescriptor, ProblemSpec};
use crate::solver::{picard_solve, SolverConfig};
use crate::spectral::{
    dilate_spectrum, from_spectrum, to_spectrum, Grid, GridFunction, ProfileDescriptor,
    SpectralFunction,
};
use crate::Result;

/// Self-similar profile f_p^*(x) = sqrt((p+1)/4π) e^{-(p+1)x²/4}; unit mass,
/// spectrum e^{-w²/(p+1)}.
pub fn fixed_point_profile(p: f64, grid: Grid) -> GridFunction {
    ProfileDescriptor::FixedPoint { amplitude: 1.0, p }.sample(grid)
}

/// Spectrum of R⁰_{L^n} f_p^* in closed form (the n-fold linear RG collapsed
/// through the semigroup identity): a Gaussian e^{-θ_n w²}.
pub fn iterated_profile_spectrum(
    diffusion: &DiffusionDescriptor,
    l: f64,
    n: u32,
    grid: Grid,
) -> SpectralFunction {
    let theta = r0_gaussian_exponent(diffusion, l, n);
    SpectralFunction::from_spectrum_fns(
        grid,
        |w| Complex64::new((-theta * w * w).exp(), 0.0),
        |w| Complex64::new(-2.0 * theta * w * (-theta * w * w).exp(), 0.0),
    )
}

/// Linear RG applied to grid data, in closed Fourier form.
pub fn linear_rg_apply(g: &GridFunction, l: f64, n: u32, spec: &ProblemSpec) -> GridFunction {
    from_spectrum(&linear_rg_apply_spectral(g, l, n, spec))
}

/// Same as [`linear_rg_apply`] but returning the spectrum (with f̂').
pub fn linear_rg_apply_spectral(
    g: &GridFunction,
    l: f64,
    n: u32,
    spec: &ProblemSpec,
) -> SpectralFunction {
    assert!(l > 1.0, "scale L must exceed 1");
    let p = spec.p();
    let scale = l.powf((p + 1.0) / 2.0);
    let gamma = rescale_coefficients(spec, n, l).diffusion.s(l) / l.powf(p + 1.0);
    let resampled = dilate_spectrum(g, scale);
    let grid = g.grid;
    let nn = grid.n_points;
    let mut coeffs = Vec::with_capacity(nn);
    let mut deriv = Vec::with_capacity(nn);
    for k in 0..nn {
        let w = grid.freq(k);
        let m = (-gamma * w * w).exp();
        let m_prime = -2.0 * gamma * w * m;
        coeffs.push(resampled.coeffs[k] * m);
        deriv.push(resampled.deriv_coeffs[k] * m + resampled.coeffs[k] * m_prime);
    }
    SpectralFunction { grid, coeffs, deriv_coeffs: deriv }
}

/// Full RG step: solve the level-n renormalized problem on [1, L] with the
/// Picard solver, then rescale parabolically (in frequency space:
/// ĝ_out(w) = û_n(L^{-(p+1)/2} w, L)).
pub fn rg_apply(
    f_n: &GridFunction,
    n: u32,
    spec: &ProblemSpec,
    l: f64,
    cfg: &SolverConfig,
    strict: bool,
) -> Result<GridFunction> {
    if strict {
        let norm = to_spectrum(f_n).bq_norm(spec.q);
        let eps = certificates::eps_n(spec, l, n)?;
        if norm >= eps {
            return Err(Error::InadmissibleData { step: n, norm, eps_n: eps });
        }
    }
    let spec_n = rescale_coefficients(spec, n, l);
    let traj = picard_solve(f_n, &spec_n, l, cfg)?;
    let scale = l.powf((spec.p() + 1.0) / 2.0);
    Ok(from_spectrum(&dilate_spectrum(traj.final_slice(), scale)))
}

/// Splits f_n into the fixed-point direction and the irrelevant remainder:
/// A_n = f̂_n(0) (valid because ℱ(R⁰_{L^n} f_p^*)(0) = 1) and
/// g_n = f_n - A_n R⁰_{L^n} f_p^*, so ĝ_n(0) = 0.
pub fn decompose(f_n: &GridFunction, n: u32, l: f64, spec: &ProblemSpec) -> (f64, GridFunction) {
    let a_n = to_spectrum(f_n).mass();
    let reference = from_spectrum(&iterated_profile_spectrum(&spec.diffusion, l, n, f_n.grid));
    let g_n = f_n.sub(&reference.scaled(a_n));
    (a_n, g_n)
}

/// One recorded step of an RG flow.
#[derive(Debug, Clone)]
pub struct RGStep {
    pub n: u32,
    pub f_n: GridFunction,
    pub a_n: f64,
    pub g_norm: f64,
    pub f_norm: f64,
    pub lambda_n: f64,
    pub eps_n: f64,
    pub admissible: bool,
}

/// The sequence {f_n, A_n, ‖g_n‖, λ_n} produced by iterating the RG operator.
#[derive(Debug, Clone)]
pub struct RGTrace {
    pub spec: ProblemSpec,
    pub l: f64,
    pub steps: Vec<RGStep>,
    pub a_limit_estimate: f64,
}

#[derive(Serialize)]
struct RGTraceReport<'a> {
    spec: &'a ProblemSpec,
    l: f64,
    grid_half_width: f64,
    grid_points: usize,
    a_limit_estimate: f64,
    steps: Vec<RGStepReport>,
}

#[derive(Serialize)]
struct RGStepReport {
    n: u32,
    a_n: f64,
    g_norm: f64,
    f_norm: f64,
    lambda_n: f64,
    eps_n: f64,
    admissible: bool,
    sup_abs: f64,
}

impl RGTrace {
    /// CSV rows (n, A_n, g_norm, lambda_n, f_norm, eps_n, admissible).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n,A_n,g_norm,lambda_n,f_norm,eps_n,admissible")?;
        for s in &self.steps {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.n, s.a_n, s.g_norm, s.lambda_n, s.f_norm, s.eps_n, s.admissible
            )?;
        }
        Ok(())
    }

    pub fn to_json_report(&self) -> String {
        let grid = self.steps.first().map(|s| s.f_n.grid).unwrap_or(Grid::standard());
        let report = RGTraceReport {
            spec: &self.spec,
            l: self.l,
            grid_half_width: grid.half_width,
            grid_points: grid.n_points,
            a_limit_estimate: self.a_limit_estimate,
            steps: self
                .steps
                .iter()
                .map(|s| RGStepReport {
                    n: s.n,
                    a_n: s.a_n,
                    g_norm: s.g_norm,
                    f_norm: s.f_norm,
                    lambda_n: s.lambda_n,
                    eps_n: s.eps_n,
                    admissible: s.admissible,
                    sup_abs: s.f_n.sup_abs(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("trace serializes")
    }

    /// Reconstructed physical amplitude series: at t = L^n the solution obeys
    /// u(x, L^n) = L^{-n(p+1)/2} f_n(L^{-n(p+1)/2} x), so
    /// sup|u(·, L^n)| = L^{-n(p+1)/2} sup|f_n|.
    pub fn amplitude_series(&self) -> Vec<(f64, f64)> {
        let p = self.spec.p();
        self.steps
            .iter()
            .map(|s| {
                let t = self.l.powi(s.n as i32);
                (t, s.f_n.sup_abs() / t.powf((p + 1.0) / 2.0))
            })
            .collect()
    }

    /// A_n sequence.
    pub fn a_series(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.a_n).collect()
    }
}

/// Iterates the RG operator from f, recording decompositions, couplings and
/// admissibility at every level; `a_limit_estimate` is the last A_n. Solver
/// failures abort with the step index attached.
pub fn rg_flow(
    f: &GridFunction,
    spec: &ProblemSpec,
    l: f64,
    n_steps: u32,
    cfg: &SolverConfig,
    strict: bool,
) -> Result<RGTrace> {
    assert!(n_steps >= 1, "rg_flow needs at least one step");
    let lam_exp = spec.lambda_exponent();
    let mut steps = Vec::with_capacity(n_steps as usize + 1);
    let mut f_cur = f.clone();
    for n in 0..=n_steps {
        let spectrum = to_spectrum(&f_cur);
        let f_norm = spectrum.bq_norm(spec.q);
        let (a_n, g_n) = decompose(&f_cur, n, l, spec);
        let g_norm = to_spectrum(&g_n).bq_norm(spec.q);
        let eps =
            certificates::eps_n(spec, l, n).map_err(|e| Error::RgStepFailed { step: n, source: Box::new(e) })?;
        let admissible = f_norm < eps;
        if strict && !admissible {
            return Err(Error::InadmissibleData { step: n, norm: f_norm, eps_n: eps });
        }
        steps.push(RGStep {
            n,
            f_n: f_cur.clone(),
            a_n,
            g_norm,
            f_norm,
            lambda_n: spec.lambda * l.powf(n as f64 * lam_exp),
            eps_n: eps,
            admissible,
        });
        if n < n_steps {
            f_cur = rg_apply(&f_cur, n, spec, l, cfg, strict)
                .map_err(|e| Error::RgStepFailed { step: n, source: Box::new(e) })?;
        }
    }
    let a_limit_estimate = steps.last().map(|s| s.a_n).unwrap_or(f64::NAN);
    Ok(RGTrace { spec: spec.clone(), l, steps, a_limit_estimate })
}
