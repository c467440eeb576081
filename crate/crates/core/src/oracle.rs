//! Crank–Nicolson finite-difference reference solver, independent of the
//! spectral path: second differences in real space, exact Δs per step for the
//! time-dependent coefficient, explicit midpoint for the nonlinear source,
//! homogeneous Dirichlet walls at ±X.

use crate::error::Error;
use crate::problem::ProblemSpec;
use crate::solver::nonlinear_rhs;
use crate::spectral::{Grid, GridFunction};
use crate::Result;

/// Thomas algorithm for a constant-coefficient tridiagonal system
/// (lower, diag, upper) x = rhs, overwriting scratch buffers.
fn solve_tridiagonal(lower: f64, diag: f64, upper: f64, rhs: &mut [f64], scratch: &mut [f64]) {
    let n = rhs.len();
    scratch[0] = upper / diag;
    rhs[0] /= diag;
    for i in 1..n {
        let denom = diag - lower * scratch[i - 1];
        scratch[i] = upper / denom;
        rhs[i] = (rhs[i] - lower * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
}

/// Evolves `f` from t = 1 to `t1` on `fine_grid` and returns the final slice.
///
/// `f` must already live on `fine_grid`; the oracle shares no numerics with
/// the spectral solvers.
pub fn oracle_solve(f: &GridFunction, spec: &ProblemSpec, t1: f64, fine_grid: Grid) -> Result<GridFunction> {
    if f.grid != fine_grid {
        return Err(Error::Grid(format!(
            "initial data lives on {:?}, expected the oracle grid {:?}",
            f.grid, fine_grid
        )));
    }
    assert!(t1 > 1.0, "oracle window must end past t = 1");

    let n = fine_grid.n_points;
    let dx2 = fine_grid.dx() * fine_grid.dx();
    let steps = ((4000.0 * (t1 - 1.0)).ceil() as usize).clamp(4000, 40_000);
    let dt = (t1 - 1.0) / steps as f64;

    let mut u = f.values.clone();
    // Dirichlet walls.
    u[0] = 0.0;
    u[n - 1] = 0.0;

    let mut rhs = vec![0.0; n - 2];
    let mut scratch = vec![0.0; n - 2];
    let mut star = vec![0.0; n];

    let second_diff = |v: &[f64], i: usize| v[i - 1] - 2.0 * v[i] + v[i + 1];

    for k in 0..steps {
        let t = 1.0 + k as f64 * dt;
        let t_next = t + dt;
        let t_mid = t + 0.5 * dt;
        let ds = spec.diffusion.s(t_next) - spec.diffusion.s(t);

        // Explicit midpoint predictor for the nonlinear source.
        let source_mid: Option<Vec<f64>> = if spec.lambda != 0.0 {
            let c_t = spec.diffusion.c(t);
            let rhs_now = nonlinear_rhs(&GridFunction::new(fine_grid, u.clone()), spec, t)?;
            star[0] = 0.0;
            star[n - 1] = 0.0;
            for i in 1..n - 1 {
                star[i] = u[i] + 0.5 * dt * (c_t * second_diff(&u, i) / dx2 + rhs_now.values[i]);
            }
            let mid = nonlinear_rhs(&GridFunction::new(fine_grid, star.clone()), spec, t_mid)?;
            Some(mid.values)
        } else {
            None
        };

        // (I - (Δs/2) D²) u_next = (I + (Δs/2) D²) u + dt * source_mid
        let r = 0.5 * ds / dx2;
        for i in 1..n - 1 {
            let mut v = u[i] + r * second_diff(&u, i);
            if let Some(src) = &source_mid {
                v += dt * src[i];
            }
            rhs[i - 1] = v;
        }
        solve_tridiagonal(-r, 1.0 + 2.0 * r, -r, &mut rhs, &mut scratch);
        u[1..n - 1].copy_from_slice(&rhs);
    }

    Ok(GridFunction::new(fine_grid, u))
}
