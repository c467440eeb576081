//! Solvers for the initial value problem on a finite window [t0, t1]:
//! a Picard iteration on the Duhamel form u = u_f + N(u) (the contraction the
//! existence proof runs on) and a first-order exponential-time-differencing
//! production stepper. Both work in frequency space where the linear
//! propagator is exact.

use std::io::{self, Write};

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::certificates;
use crate::error::Error;
use crate::problem::ProblemSpec;
use crate::spectral::{from_spectrum, to_spectrum, GridFunction, SpectralFunction};
use crate::Result;

/// Per-slice diagnostics carried along a trajectory.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SliceDiagnostics {
    pub sup_abs: f64,
    pub mass: f64,
    pub bq: f64,
}

/// Time-stamped sequence of solution slices over one solve window.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub spec: ProblemSpec,
    pub times: Vec<f64>,
    pub slices: Vec<GridFunction>,
    pub diagnostics: Vec<SliceDiagnostics>,
}

impl Trajectory {
    pub fn final_slice(&self) -> &GridFunction {
        self.slices.last().expect("trajectory is never empty")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    /// (t, sup|u|) pairs for decay fitting.
    pub fn amplitude_series(&self) -> Vec<(f64, f64)> {
        self.times.iter().zip(&self.diagnostics).map(|(&t, d)| (t, d.sup_abs)).collect()
    }

    pub fn mass_series(&self) -> Vec<f64> {
        self.diagnostics.iter().map(|d| d.mass).collect()
    }

    /// Largest weighted norm along the window (the ‖·‖_L of the proofs).
    pub fn sup_bq(&self) -> f64 {
        self.diagnostics.iter().fold(0.0f64, |m, d| m.max(d.bq))
    }

    /// CSV rows (t, sup_abs, mass, bq_norm).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,sup_abs,mass,bq_norm")?;
        for (t, d) in self.times.iter().zip(&self.diagnostics) {
            writeln!(out, "{},{},{},{}", t, d.sup_abs, d.mass, d.bq)?;
        }
        Ok(())
    }
}

/// Solver knobs shared by both steppers.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Panels per unit window (per doubling on long windows); at least 8.
    pub substeps: usize,
    pub picard_tol: f64,
    pub picard_max_iters: usize,
    /// Working analyticity margin; `None` selects ρ0/2 for finite radii
    /// and 1.0 for entire series.
    pub rho_guard: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { substeps: 32, picard_tol: 1e-10, picard_max_iters: 50, rho_guard: None }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.substeps < 8 {
            return Err(Error::Grid(format!("substeps must be >= 8, got {}", self.substeps)));
        }
        if !(self.picard_tol > 0.0) || self.picard_max_iters == 0 {
            return Err(Error::Grid("picard_tol and picard_max_iters must be positive".into()));
        }
        if let Some(g) = self.rho_guard {
            if !(g > 0.0) {
                return Err(Error::Grid(format!("rho_guard must be positive, got {g}")));
            }
        }
        Ok(())
    }
}

/// Working radius: ρ0/2 = πρ/(2C(q)) for finite analyticity radii, the
/// declared convention 1.0 for entire series.
pub fn default_rho_guard(spec: &ProblemSpec) -> f64 {
    if spec.nonlinearity.radius.is_finite() {
        0.5 * certificates::rho0(spec)
    } else {
        1.0
    }
}

fn rho_guard_for(spec: &ProblemSpec, cfg: &SolverConfig) -> f64 {
    cfg.rho_guard.unwrap_or_else(|| default_rho_guard(spec))
}

/// Exact linear evolution from time 1 to t: the heat multiplier with the
/// accumulated diffusion time s(t).
pub fn linear_solve(f: &GridFunction, spec: &ProblemSpec, t: f64) -> GridFunction {
    from_spectrum(&to_spectrum(f).heat_propagate(spec.diffusion.s(t)))
}

/// Pointwise nonlinear right-hand side λ d(t) F(u), d(t) = t^r, using the
/// default working radius.
pub fn nonlinear_rhs(u: &GridFunction, spec: &ProblemSpec, t: f64) -> Result<GridFunction> {
    nonlinear_rhs_guarded(u, spec, t, default_rho_guard(spec))
}

fn nonlinear_rhs_guarded(
    u: &GridFunction,
    spec: &ProblemSpec,
    t: f64,
    guard: f64,
) -> Result<GridFunction> {
    let sup = u.sup_abs();
    if sup >= guard {
        return Err(Error::RadiusExceeded { sup_abs: sup, guard, t });
    }
    let d = if spec.reaction_exponent == 0.0 { 1.0 } else { t.powf(spec.reaction_exponent) };
    let factor = spec.lambda * d;
    let values = u.values.iter().map(|&v| factor * spec.nonlinearity.eval(v)).collect();
    Ok(GridFunction::new(u.grid, values))
}

/// Time nodes for one window: uniform when t1/t0 ≤ 4, geometric otherwise
/// (c(t) ~ t^p makes s(t) superlinear, geometric nodes equidistribute Δs).
/// Panel count is clamped to [16, 8·substeps].
pub fn time_nodes(t0: f64, t1: f64, substeps: usize) -> Vec<f64> {
    assert!(t1 > t0 && t0 > 0.0, "need 0 < t0 < t1");
    let cap = 8 * substeps;
    let count = if t1 / t0 > 4.0 {
        ((substeps as f64) * (t1 / t0).log2()).ceil() as usize
    } else {
        ((substeps as f64) * (t1 - t0)).ceil() as usize
    }
    .clamp(16, cap);
    let mut times = Vec::with_capacity(count + 1);
    if t1 / t0 > 4.0 {
        let ratio = (t1 / t0).powf(1.0 / count as f64);
        let mut t = t0;
        for _ in 0..count {
            times.push(t);
            t *= ratio;
        }
    } else {
        let h = (t1 - t0) / count as f64;
        for k in 0..count {
            times.push(t0 + k as f64 * h);
        }
    }
    times.push(t1);
    times
}

/// Weights of the quadratic interpolant through (x0,x1,x2) integrated over [a,b].
fn lagrange_quadratic_weights(x0: f64, x1: f64, x2: f64, a: f64, b: f64) -> [f64; 3] {
    let moment = |u: f64, v: f64| {
        let prim = |x: f64| x * x * x / 3.0 - 0.5 * (u + v) * x * x + u * v * x;
        prim(b) - prim(a)
    };
    [
        moment(x1, x2) / ((x0 - x1) * (x0 - x2)),
        moment(x0, x2) / ((x1 - x0) * (x1 - x2)),
        moment(x0, x1) / ((x2 - x0) * (x2 - x1)),
    ]
}

/// Prefix quadrature weights: row m integrates node data over [t_0, t_m] with
/// the composite quadratic rule (Simpson on uniform nodes), valid for
/// non-uniform spacings as well.
pub(crate) fn prefix_quadrature_weights(times: &[f64]) -> Vec<Vec<f64>> {
    let mm = times.len();
    let mut rows = vec![vec![0.0; mm]; mm];
    for m in 1..mm {
        let row = &mut rows[m];
        if m == 1 {
            if mm >= 3 {
                let w = lagrange_quadratic_weights(times[0], times[1], times[2], times[0], times[1]);
                row[0] += w[0];
                row[1] += w[1];
                row[2] += w[2];
            } else {
                let h = times[1] - times[0];
                row[0] += 0.5 * h;
                row[1] += 0.5 * h;
            }
            continue;
        }
        let pairs_end = if m % 2 == 0 { m } else { m - 1 };
        let mut i = 0;
        while i < pairs_end {
            let w = lagrange_quadratic_weights(
                times[i],
                times[i + 1],
                times[i + 2],
                times[i],
                times[i + 2],
            );
            row[i] += w[0];
            row[i + 1] += w[1];
            row[i + 2] += w[2];
            i += 2;
        }
        if m % 2 == 1 {
            let w = lagrange_quadratic_weights(
                times[m - 2],
                times[m - 1],
                times[m],
                times[m - 1],
                times[m],
            );
            row[m - 2] += w[0];
            row[m - 1] += w[1];
            row[m] += w[2];
        }
    }
    rows
}

/// Convergence record of one Picard solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PicardStats {
    pub iterations: usize,
    /// ‖u^{k+1} - u^k‖_L per iteration.
    pub residuals: Vec<f64>,
    /// ‖u - u_f‖_L of the converged solution (the radius of the ball B_f used).
    pub distance_to_linear: f64,
}

/// Fixed point of u = u_f + N(u) on [1, L] by Picard iteration seeded at u_f,
/// with the Duhamel integral evaluated in frequency space by composite
/// quadrature over the stored time nodes.
pub fn picard_solve(
    f: &GridFunction,
    spec: &ProblemSpec,
    l: f64,
    cfg: &SolverConfig,
) -> Result<Trajectory> {
    picard_solve_with_stats(f, spec, l, cfg).map(|(t, _)| t)
}

pub fn picard_solve_with_stats(
    f: &GridFunction,
    spec: &ProblemSpec,
    l: f64,
    cfg: &SolverConfig,
) -> Result<(Trajectory, PicardStats)> {
    cfg.validate()?;
    assert!(l > 1.0, "window end must exceed 1");
    let guard = rho_guard_for(spec, cfg);
    let grid = f.grid;
    let n = grid.n_points;
    let times = time_nodes(1.0, l, cfg.substeps);
    let mm = times.len();
    let s_vals: Vec<f64> = times.iter().map(|&t| spec.diffusion.s(t)).collect();
    let weights = prefix_quadrature_weights(&times);

    let f_hat = to_spectrum(f);
    let u_f_hat: Vec<SpectralFunction> =
        s_vals.iter().map(|&s| f_hat.heat_propagate(s)).collect();

    if spec.lambda == 0.0 {
        let traj = trajectory_from_spectra(spec, &times, &u_f_hat);
        let stats =
            PicardStats { iterations: 1, residuals: vec![0.0], distance_to_linear: 0.0 };
        return Ok((traj, stats));
    }

    let freqs = grid.freqs();
    let mut u_hat = u_f_hat.clone();
    let mut u_real: Vec<GridFunction> = u_hat.iter().map(from_spectrum).collect();
    let mut residuals = Vec::new();

    for iter in 1..=cfg.picard_max_iters {
        // Source terms λ d(τ) F(u(τ)) at every node, in frequency space.
        let sources: Vec<SpectralFunction> = u_real
            .iter()
            .zip(&times)
            .map(|(u, &t)| nonlinear_rhs_guarded(u, spec, t, guard).map(|g| to_spectrum(&g)))
            .collect::<Result<_>>()?;

        use rayon::prelude::*;
        let new_hat: Vec<SpectralFunction> = (0..mm)
            .into_par_iter()
            .map(|m| {
                let mut coeffs = u_f_hat[m].coeffs.clone();
                let mut deriv = u_f_hat[m].deriv_coeffs.clone();
                for j in 0..=m {
                    let w_q = weights[m][j];
                    if w_q == 0.0 {
                        continue;
                    }
                    let ds = s_vals[m] - s_vals[j];
                    let src = &sources[j];
                    for k in 0..n {
                        let w = freqs[k];
                        let kernel = (-ds * w * w).exp() * w_q;
                        coeffs[k] += src.coeffs[k] * kernel;
                        deriv[k] +=
                            (src.deriv_coeffs[k] - src.coeffs[k] * (2.0 * w * ds)) * kernel;
                    }
                }
                SpectralFunction { grid, coeffs, deriv_coeffs: deriv }
            })
            .collect();

        let residual = (0..mm)
            .map(|m| new_hat[m].sub(&u_hat[m]).bq_norm(spec.q))
            .fold(0.0f64, f64::max);
        residuals.push(residual);
        u_hat = new_hat;
        u_real = u_hat.iter().map(from_spectrum).collect();

        if residual < cfg.picard_tol {
            let distance = (0..mm)
                .map(|m| u_hat[m].sub(&u_f_hat[m]).bq_norm(spec.q))
                .fold(0.0f64, f64::max);
            let traj = trajectory_from_spectra(spec, &times, &u_hat);
            return Ok((traj, PicardStats { iterations: iter, residuals, distance_to_linear: distance }));
        }
    }
    Err(Error::NoContraction {
        iterations: cfg.picard_max_iters,
        residual: residuals.last().copied().unwrap_or(f64::NAN),
    })
}

fn trajectory_from_spectra(
    spec: &ProblemSpec,
    times: &[f64],
    spectra: &[SpectralFunction],
) -> Trajectory {
    let mut slices = Vec::with_capacity(spectra.len());
    let mut diagnostics = Vec::with_capacity(spectra.len());
    for s in spectra {
        let slice = from_spectrum(s);
        diagnostics.push(SliceDiagnostics {
            sup_abs: slice.sup_abs(),
            mass: s.mass(),
            bq: s.bq_norm(spec.q),
        });
        slices.push(slice);
    }
    Trajectory { spec: spec.clone(), times: times.to_vec(), slices, diagnostics }
}

const GAUSS5_NODES: [f64; 5] =
    [-0.906179845938664, -0.5384693101056831, 0.0, 0.5384693101056831, 0.906179845938664];
const GAUSS5_WEIGHTS: [f64; 5] =
    [0.23692688505618908, 0.47862867049936647, 0.5688888888888889, 0.47862867049936647, 0.23692688505618908];

/// First-order exponential-time-differencing stepper for the same problem:
/// û ← e^{-Δs w²} û + (∫ e^{-(s(t_{k+1})-s(τ)) w²} dτ) · F̂(u(t_k)).
pub fn etd_evolve(
    f: &GridFunction,
    spec: &ProblemSpec,
    t0: f64,
    t1: f64,
    cfg: &SolverConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    assert!(t0 >= 1.0 && t1 > t0, "need 1 <= t0 < t1");
    let guard = rho_guard_for(spec, cfg);
    let grid = f.grid;
    let times = time_nodes(t0, t1, cfg.substeps);
    let freqs = grid.freqs();

    let mut u_hat = to_spectrum(f).coeffs;
    let mut slices = Vec::with_capacity(times.len());
    let mut diagnostics = Vec::with_capacity(times.len());

    for k in 0..times.len() {
        let spectral = SpectralFunction {
            grid,
            coeffs: u_hat.clone(),
            deriv_coeffs: vec![Complex64::new(0.0, 0.0); grid.n_points],
        };
        let u_real = from_spectrum(&spectral);
        // Recompute the full spectrum (with f̂') for the diagnostics norm.
        let full = to_spectrum(&u_real);
        diagnostics.push(SliceDiagnostics {
            sup_abs: u_real.sup_abs(),
            mass: u_hat[0].re,
            bq: full.bq_norm(spec.q),
        });

        if k + 1 == times.len() {
            slices.push(u_real);
            break;
        }

        let (ta, tb) = (times[k], times[k + 1]);
        let ds = spec.diffusion.s(tb) - spec.diffusion.s(ta);
        if spec.lambda != 0.0 {
            let rhs = nonlinear_rhs_guarded(&u_real, spec, ta, guard)?;
            let rhs_hat = to_spectrum(&rhs).coeffs;
            let mid = 0.5 * (ta + tb);
            let half = 0.5 * (tb - ta);
            let s_end = spec.diffusion.s(tb);
            let s_nodes: [f64; 5] = std::array::from_fn(|g| {
                spec.diffusion.s(mid + half * GAUSS5_NODES[g])
            });
            for (i, w) in freqs.iter().enumerate() {
                let w2 = w * w;
                let mut phi = 0.0;
                for g in 0..5 {
                    phi += GAUSS5_WEIGHTS[g] * (-(s_end - s_nodes[g]) * w2).exp();
                }
                phi *= half;
                u_hat[i] = u_hat[i] * (-ds * w2).exp() + rhs_hat[i] * phi;
            }
        } else {
            for (i, w) in freqs.iter().enumerate() {
                u_hat[i] *= (-ds * w * w).exp();
            }
        }
        slices.push(u_real);
    }

    Ok(Trajectory { spec: spec.clone(), times, slices, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{make_problem, DiffusionDescriptor, NonlinearitySeries};
    use crate::rg::fixed_point_profile;
    use crate::spectral::{bq_norm_of, Grid, ProfileDescriptor};

    fn cubic_spec(lambda: f64) -> ProblemSpec {
        make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(3.0),
            lambda,
            2.0,
            0.0,
        )
        .unwrap()
    }

    fn grid() -> Grid {
        Grid::standard()
    }

    #[test]
    fn time_nodes_shape() {
        let t = time_nodes(1.0, 2.0, 32);
        assert_eq!(t.len(), 33);
        assert_eq!(t[0], 1.0);
        assert_eq!(*t.last().unwrap(), 2.0);
        let tg = time_nodes(1.0, 256.0, 32);
        assert!(tg.len() >= 17);
        assert_eq!(*tg.last().unwrap(), 256.0);
        // geometric spacing: ratios roughly constant
        let r1 = tg[1] / tg[0];
        let r2 = tg[10] / tg[9];
        assert!((r1 - r2).abs() < 1e-10);
        for w in tg.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn prefix_weights_integrate_quadratics_exactly() {
        let times = time_nodes(1.0, 2.0, 32);
        let weights = prefix_quadrature_weights(&times);
        for m in [1usize, 2, 7, 16, 31, 32] {
            let num: f64 =
                (0..times.len()).map(|j| weights[m][j] * times[j] * times[j]).sum();
            let exact = (times[m].powi(3) - 1.0) / 3.0;
            assert!((num - exact).abs() < 1e-13, "m={m}: {num} vs {exact}");
        }
    }

    #[test]
    fn prefix_weights_geometric_nodes() {
        let times = time_nodes(1.0, 64.0, 8);
        let weights = prefix_quadrature_weights(&times);
        let m = times.len() - 1;
        let num: f64 = (0..times.len()).map(|j| weights[m][j] * times[j]).sum();
        let exact = (times[m].powi(2) - 1.0) / 2.0;
        assert!((num - exact).abs() < 1e-10 * exact, "{num} vs {exact}");
    }

    #[test]
    fn linear_solve_examples() {
        let spec = cubic_spec(0.0);
        let g = grid();
        let f = ProfileDescriptor::Gaussian { amplitude: 0.3, sigma: 1.0, center: 0.0 }.sample(g);

        let same = linear_solve(&f, &spec, 1.0);
        assert!(f.sub(&same).sup_abs() < 1e-13);

        // p=1, t=sqrt(3): s=1, so e^{-w^2/2} -> e^{-3w^2/2}.
        let norm = ProfileDescriptor::Gaussian { amplitude: 1.0, sigma: 1.0, center: 0.0 }.sample(g);
        let moved = to_spectrum(&linear_solve(&norm, &spec, 3f64.sqrt()));
        for k in [1usize, 20, 100] {
            let w = g.freq(k);
            let expect = 2.5066282746310002 * (-1.5 * w * w).exp();
            assert!((moved.coeffs[k].re - expect).abs() < 1e-10);
        }

        let mass_before = to_spectrum(&f).mass();
        let mass_after = to_spectrum(&linear_solve(&f, &spec, 4.0)).mass();
        assert!((mass_before - mass_after).abs() < 1e-12);
    }

    #[test]
    fn nonlinear_rhs_examples() {
        let g = Grid::new(10.0, 256).unwrap();
        let spec = cubic_spec(1.0);
        let zero = nonlinear_rhs(&GridFunction::zeros(g), &spec, 1.0).unwrap();
        assert_eq!(zero.sup_abs(), 0.0);

        let u = GridFunction::new(g, vec![0.1; 256]);
        let cubed = nonlinear_rhs(&u, &spec, 1.0).unwrap();
        assert!((cubed.values[3] - 0.001).abs() < 1e-15);

        // F=u^2, r=1, t=2, lambda=-1: -2 * 0.01 = -0.02.
        let reacting = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(2.0),
            -1.0,
            2.0,
            1.0,
        )
        .unwrap();
        let v = nonlinear_rhs(&u, &reacting, 2.0).unwrap();
        assert!((v.values[0] - -0.02).abs() < 1e-15);
    }

    #[test]
    fn nonlinear_rhs_enforces_radius_guard() {
        let g = Grid::new(10.0, 256).unwrap();
        // radius 1, q=2: rho0 = pi/(11 pi) = 1/11, guard = 1/22.
        let spec = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::new(vec![(3.0, 1.0)], 1.0).unwrap(),
            1.0,
            2.0,
            0.0,
        )
        .unwrap();
        let u = GridFunction::new(g, vec![0.1; 256]);
        match nonlinear_rhs(&u, &spec, 1.0) {
            Err(Error::RadiusExceeded { .. }) => {}
            other => panic!("expected RadiusExceeded, got {other:?}"),
        }
    }

    #[test]
    fn picard_linear_case_is_exact() {
        let spec = cubic_spec(0.0);
        let g = grid();
        let f = ProfileDescriptor::Gaussian { amplitude: 0.4, sigma: 1.3, center: 0.2 }.sample(g);
        let (traj, stats) = picard_solve_with_stats(&f, &spec, 2.0, &SolverConfig::default()).unwrap();
        assert_eq!(stats.iterations, 1);
        let lin = linear_solve(&f, &spec, 2.0);
        assert_eq!(traj.final_slice().values, lin.values);
    }

    #[test]
    fn picard_small_data_contracts() {
        let spec = cubic_spec(1.0);
        let g = grid();
        let f = fixed_point_profile(1.0, g).scaled(0.01);
        let f_norm = bq_norm_of(&f, 2.0);
        let (traj, stats) = picard_solve_with_stats(&f, &spec, 2.0, &SolverConfig::default()).unwrap();
        assert!(stats.iterations <= 6, "iterations {}", stats.iterations);
        assert!(stats.distance_to_linear <= f_norm, "|u - u_f| = {} vs |f| = {f_norm}", stats.distance_to_linear);
        assert_eq!(traj.times.len(), traj.slices.len());
    }

    #[test]
    fn picard_large_data_fails() {
        let spec = cubic_spec(1.0);
        let g = grid();
        let f = fixed_point_profile(1.0, g).scaled(10.0);
        match picard_solve(&f, &spec, 2.0, &SolverConfig::default()) {
            Err(Error::RadiusExceeded { .. }) | Err(Error::NoContraction { .. }) => {}
            other => panic!("expected failure for large data, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn picard_residuals_halve_below_eps_local() {
        let spec = cubic_spec(1.0);
        let g = grid();
        let eps = certificates::eps_local(&spec, 2.0).unwrap();
        let c_pq = certificates::profile_norm_bound(1.0, 2.0);
        let f = fixed_point_profile(1.0, g).scaled(0.9 * eps / c_pq);
        let (_, stats) = picard_solve_with_stats(&f, &spec, 2.0, &SolverConfig::default()).unwrap();
        assert!(stats.iterations <= 10);
        for pair in stats.residuals.windows(2) {
            if pair[0] > 0.0 {
                assert!(pair[1] / pair[0] <= 0.5, "residual ratio {} too large", pair[1] / pair[0]);
            }
        }
    }

    #[test]
    fn picard_comparison_bound() {
        // ||u||_L <= 2 (1 + sqrt(s(L))) ||f|| along converged trajectories.
        let spec = cubic_spec(1.0);
        let g = grid();
        let f = fixed_point_profile(1.0, g).scaled(0.01);
        let f_norm = bq_norm_of(&f, 2.0);
        let (traj, _) = picard_solve_with_stats(&f, &spec, 2.0, &SolverConfig::default()).unwrap();
        let bound = 2.0 * (1.0 + spec.diffusion.s(2.0).sqrt()) * f_norm;
        assert!(traj.sup_bq() <= bound, "{} vs {bound}", traj.sup_bq());
    }

    #[test]
    fn etd_matches_linear_solve_for_lambda_zero() {
        let spec = cubic_spec(0.0);
        let g = grid();
        let f = ProfileDescriptor::Gaussian { amplitude: 0.5, sigma: 1.0, center: 0.0 }.sample(g);
        let traj = etd_evolve(&f, &spec, 1.0, 2.0, &SolverConfig::default()).unwrap();
        let lin = linear_solve(&f, &spec, 2.0);
        assert!(traj.final_slice().sub(&lin).sup_abs() <= 1e-12);
    }

    #[test]
    fn etd_matches_picard_on_nonlinear_window() {
        let spec = cubic_spec(1.0);
        let g = grid();
        let f = fixed_point_profile(1.0, g).scaled(0.01);
        let pic = picard_solve(&f, &spec, 2.0, &SolverConfig::default()).unwrap();
        let etd = etd_evolve(&f, &spec, 1.0, 2.0, &SolverConfig::default()).unwrap();
        let diff = pic.final_slice().sub(etd.final_slice()).sup_abs();
        assert!(diff <= 1e-6, "sup diff {diff}");
    }

    #[test]
    fn etd_is_first_order() {
        let spec = cubic_spec(1.0);
        let g = grid();
        let f = fixed_point_profile(1.0, g).scaled(0.3);
        let reference = picard_solve(
            &f,
            &spec,
            2.0,
            &SolverConfig { substeps: 64, picard_tol: 1e-12, ..Default::default() },
        )
        .unwrap();
        let err = |substeps: usize| {
            let traj = etd_evolve(
                &f,
                &spec,
                1.0,
                2.0,
                &SolverConfig { substeps, ..Default::default() },
            )
            .unwrap();
            traj.final_slice().sub(reference.final_slice()).sup_abs()
        };
        let ratio = err(24) / err(48);
        assert!((1.3..=3.0).contains(&ratio), "halving ratio {ratio}");
    }

    #[test]
    fn mass_strictly_decreases_for_absorbing_nonlinearity() {
        let spec = cubic_spec(-1.0);
        let g = grid();
        let f = ProfileDescriptor::Gaussian { amplitude: 0.5, sigma: 1.0, center: 0.0 }.sample(g);
        let traj = etd_evolve(&f, &spec, 1.0, 4.0, &SolverConfig::default()).unwrap();
        let masses = traj.mass_series();
        for w in masses.windows(2) {
            assert!(w[1] < w[0], "mass not strictly decreasing: {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn trajectory_csv_header() {
        let spec = cubic_spec(0.0);
        let g = Grid::new(10.0, 64).unwrap();
        let f = ProfileDescriptor::Gaussian { amplitude: 0.1, sigma: 1.0, center: 0.0 }.sample(g);
        let traj = etd_evolve(&f, &spec, 1.0, 2.0, &SolverConfig { substeps: 8, ..Default::default() }).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t,sup_abs,mass,bq_norm\n"));
    }
}
