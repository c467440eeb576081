//! Observable predictions extracted from solver and RG output: the decay
//! exponent of the amplitude, the distance to the self-similar profile, the
//! mass limit, and the critical-case logarithmic correction probe.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rg::RGTrace;
use crate::solver::Trajectory;
use crate::spectral::{dilate_spectrum, GridFunction};
use crate::Result;

/// Least-squares decay fit of log(amplitude) against log(t).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DecayFit {
    pub gamma_est: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub residual_rms: f64,
}

/// Fit window selection; the default discards everything before the latest
/// decade (the statements being tested are asymptotic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitWindow {
    LatestDecade,
    All,
    Range(f64, f64),
}

fn linear_regression(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 =
        xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let dof = (xs.len().max(3) - 2) as f64;
    let stderr = (ss_res / dof / sxx).sqrt();
    let rms = (ss_res / n).sqrt();
    (slope, intercept, stderr, rms)
}

/// Decay exponent: amplitude ~ t^{-gamma/2}, so gamma_est = -2 · slope.
pub fn fit_decay_exponent(series: &[(f64, f64)]) -> Result<DecayFit> {
    fit_decay_exponent_in(series, FitWindow::LatestDecade)
}

pub fn fit_decay_exponent_in(series: &[(f64, f64)], window: FitWindow) -> Result<DecayFit> {
    if series.len() < 8 {
        return Err(Error::DegenerateSeries(format!("need >= 8 samples, got {}", series.len())));
    }
    if series.iter().any(|&(_, a)| !(a > 0.0)) {
        return Err(Error::DegenerateSeries("non-positive amplitude in series".into()));
    }
    let t_max = series.iter().map(|&(t, _)| t).fold(f64::MIN, f64::max);
    let t_min = series.iter().map(|&(t, _)| t).fold(f64::MAX, f64::min);
    if t_max / t_min < 10.0 {
        return Err(Error::DegenerateSeries(format!(
            "series spans {t_min}..{t_max}; need at least one decade"
        )));
    }
    let (lo, hi) = match window {
        FitWindow::LatestDecade => (t_max / 10.0, t_max),
        FitWindow::All => (t_min, t_max),
        FitWindow::Range(a, b) => (a, b),
    };
    let pts: Vec<(f64, f64)> =
        series.iter().copied().filter(|&(t, _)| t >= lo && t <= hi).collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateSeries(format!("window [{lo}, {hi}] holds {} points", pts.len())));
    }
    let xs: Vec<f64> = pts.iter().map(|&(t, _)| t.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|&(_, a)| a.ln()).collect();
    let (slope, _, stderr, rms) = linear_regression(&xs, &ys);
    Ok(DecayFit { gamma_est: -2.0 * slope, stderr: 2.0 * stderr, window: (lo, hi), residual_rms: rms })
}

/// Distance of a slice at time t to the self-similar form A f_p^*: builds the
/// parabolically rescaled profile v(x) = t^{(p+1)/2} u(t^{(p+1)/2} x, t) by
/// frequency-space resampling and measures ‖v - A f_p^*‖ in the weighted norm.
pub fn profile_distance(u_t: &GridFunction, t: f64, p: f64, a: f64, q: f64) -> f64 {
    assert!(t >= 1.0, "profile distance needs t >= 1");
    let scale = t.powf((p + 1.0) / 2.0);
    let v = dilate_spectrum(u_t, scale);
    let grid = u_t.grid;
    let mut worst = 0.0f64;
    for k in 0..grid.n_points {
        let w = grid.freq(k);
        let fp = (-w * w / (p + 1.0)).exp();
        let fp_deriv = -2.0 * w / (p + 1.0) * fp;
        let dc = (v.coeffs[k].re - a * fp, v.coeffs[k].im);
        let dd = (v.deriv_coeffs[k].re - a * fp_deriv, v.deriv_coeffs[k].im);
        let value = (1.0 + w.abs().powf(q))
            * ((dc.0 * dc.0 + dc.1 * dc.1).sqrt() + (dd.0 * dd.0 + dd.1 * dd.1).sqrt());
        worst = worst.max(value);
    }
    worst
}

/// Aitken extrapolation of a sequence assumed geometric, a + c ρ^n with |ρ|<1.
pub fn estimate_limit(values: &[f64]) -> Result<f64> {
    if values.len() < 3 {
        return Err(Error::DegenerateSeries(format!("need >= 3 samples, got {}", values.len())));
    }
    let n = values.len();
    let (v0, v1, v2) = (values[n - 3], values[n - 2], values[n - 1]);
    let d1 = v1 - v0;
    let d2 = v2 - v1;
    if d2 == 0.0 {
        return Ok(v2);
    }
    if d1 == 0.0 || d2.abs() >= d1.abs() {
        return Err(Error::NonConvergent(format!(
            "successive differences do not shrink: {d1:.3e} then {d2:.3e}"
        )));
    }
    let rho = d2 / d1;
    Ok(v2 + d2 * rho / (1.0 - rho))
}

/// Mass limit A = lim ∫ u dx estimated from a direct trajectory.
pub fn estimate_a_from_trajectory(traj: &Trajectory) -> Result<f64> {
    estimate_limit(&traj.mass_series())
}

/// Mass limit estimated from the A_n sequence of an RG trace.
pub fn estimate_a_from_trace(trace: &RGTrace) -> Result<f64> {
    estimate_limit(&trace.a_series())
}

/// Critical-case probe: fits amplitude(t) · t^{gamma/2} against (log t)^{-mu};
/// returns (mu, stderr). Reported, never asserted against a target.
pub fn log_correction_fit(series: &[(f64, f64)], gamma_fixed: f64) -> Result<(f64, f64)> {
    let usable: Vec<(f64, f64)> =
        series.iter().copied().filter(|&(t, a)| t > 1.0 && a > 0.0).collect();
    if usable.len() < 8 {
        return Err(Error::DegenerateSeries(format!(
            "need >= 8 samples with t > 1 and positive amplitude, got {}",
            usable.len()
        )));
    }
    let t_max = usable.iter().map(|&(t, _)| t).fold(f64::MIN, f64::max);
    let pts: Vec<(f64, f64)> =
        usable.iter().copied().filter(|&(t, _)| t >= t_max / 10.0).collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateSeries("latest decade holds fewer than 3 points".into()));
    }
    let xs: Vec<f64> = pts.iter().map(|&(t, _)| t.ln().ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|&(t, a)| (a * t.powf(gamma_fixed / 2.0)).ln()).collect();
    let (slope, _, stderr, _) = linear_regression(&xs, &ys);
    Ok((-slope, stderr))
}

/// Plot-ready CSV: (log t, log amplitude, fitted line).
pub fn decay_fit_csv(series: &[(f64, f64)], fit: &DecayFit) -> String {
    let mut out = String::from("log_t,log_amplitude,fit\n");
    // Re-derive the intercept on the fit window for the rendered line.
    let pts: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|&(t, a)| t >= fit.window.0 && t <= fit.window.1 && a > 0.0)
        .collect();
    let slope = -fit.gamma_est / 2.0;
    let intercept = if pts.is_empty() {
        0.0
    } else {
        pts.iter().map(|&(t, a)| a.ln() - slope * t.ln()).sum::<f64>() / pts.len() as f64
    };
    for &(t, a) in series.iter().filter(|&&(_, a)| a > 0.0) {
        let x = t.ln();
        out.push_str(&format!("{},{},{}\n", x, a.ln(), intercept + slope * x));
    }
    out
}
