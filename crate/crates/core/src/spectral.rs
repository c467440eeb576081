//! Real ↔ frequency representations on a uniform grid, the weighted
//! sup-norm over frequencies, and the exact heat multiplier.
//!
//! Transforms carry the continuum normalization coeffs[k] ≈ ∫ f(x) e^{-i w_k x} dx,
//! so the zero-frequency coefficient is the mass ∫ f dx. Alongside the
//! coefficients each spectrum stores the frequency derivative f̂'(w_k),
//! obtained by transforming (-i x) f(x); the weighted norm needs f̂' at
//! spectral accuracy, which finite differences across bins cannot deliver
//! near the norm's argmax.

use std::cell::RefCell;
use std::io::{self, Write};

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Uniform grid on [-X, X) with N (a power of two) points and frequencies
/// w_k = pi k / X, k = -N/2 .. N/2-1, stored in FFT order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub half_width: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Grid(format!("half_width must be positive, got {half_width}")));
        }
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(Error::Grid(format!("n_points must be a power of two >= 2, got {n_points}")));
        }
        Ok(Self { half_width, n_points })
    }

    /// Desk-scale default: X = 40, N = 4096.
    pub fn standard() -> Self {
        Self { half_width: 40.0, n_points: 4096 }
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Frequency of FFT bin k (bins above N/2 alias to negative frequencies).
    pub fn freq(&self, k: usize) -> f64 {
        let n = self.n_points;
        let signed = if k < n / 2 { k as isize } else { k as isize - n as isize };
        std::f64::consts::PI * signed as f64 / self.half_width
    }

    pub fn freqs(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.freq(k)).collect()
    }
}

/// Real-space samples of one time slice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.n_points, "value count must match the grid");
        Self { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![0.0; grid.n_points] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.n_points).map(|i| f(grid.x(i))).collect();
        Self { grid, values }
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Trapezoid-free mass: on a periodic grid the plain Riemann sum is the
    /// spectrally accurate quadrature.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }

    pub fn scaled(&self, factor: f64) -> GridFunction {
        GridFunction { grid: self.grid, values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        GridFunction { grid: self.grid, values }
    }

    pub fn add(&self, other: &GridFunction) -> GridFunction {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        GridFunction { grid: self.grid, values }
    }

    /// CSV rows (x, value).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,value")?;
        for i in 0..self.grid.n_points {
            writeln!(out, "{},{}", self.grid.x(i), self.values[i])?;
        }
        Ok(())
    }
}

/// Frequency-space representation of one time slice: coeffs[k] ≈ f̂(w_k),
/// deriv_coeffs[k] ≈ f̂'(w_k).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    pub grid: Grid,
    pub coeffs: Vec<Complex64>,
    pub deriv_coeffs: Vec<Complex64>,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn fft_in_place(buf: &mut [Complex64], forward: bool) {
    PLANNER.with(|p| {
        let mut planner = p.borrow_mut();
        let plan = if forward {
            planner.plan_fft_forward(buf.len())
        } else {
            planner.plan_fft_inverse(buf.len())
        };
        plan.process(buf);
    });
}

#[inline]
fn bin_sign(k: usize) -> f64 {
    if k & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Forward transform with continuum normalization; also transforms (-i x) f(x)
/// to populate the derivative array.
pub fn to_spectrum(f: &GridFunction) -> SpectralFunction {
    let n = f.grid.n_points;
    let dx = f.grid.dx();
    let mut buf0: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut buf1: Vec<Complex64> =
        (0..n).map(|i| Complex64::new(f.grid.x(i) * f.values[i], 0.0)).collect();
    fft_in_place(&mut buf0, true);
    fft_in_place(&mut buf1, true);
    let mut coeffs = Vec::with_capacity(n);
    let mut deriv = Vec::with_capacity(n);
    for k in 0..n {
        let s = bin_sign(k) * dx;
        coeffs.push(buf0[k] * s);
        // transform of (-i x) f = -i * transform of (x f)
        deriv.push(buf1[k] * s * Complex64::new(0.0, -1.0));
    }
    SpectralFunction { grid: f.grid, coeffs, deriv_coeffs: deriv }
}

/// Inverse transform; returns the real part (imaginary residue is at the
/// rounding level for conjugate-symmetric spectra).
pub fn from_spectrum(s: &SpectralFunction) -> GridFunction {
    let n = s.grid.n_points;
    let mut buf: Vec<Complex64> = (0..n).map(|k| s.coeffs[k] * bin_sign(k)).collect();
    fft_in_place(&mut buf, false);
    let scale = 1.0 / (n as f64 * s.grid.dx());
    let values = buf.iter().map(|c| c.re * scale).collect();
    GridFunction { grid: s.grid, values }
}

impl SpectralFunction {
    /// Builds a spectrum from closed-form f̂ and f̂' evaluated on the grid
    /// frequencies.
    pub fn from_spectrum_fns(
        grid: Grid,
        coeff: impl Fn(f64) -> Complex64,
        deriv: impl Fn(f64) -> Complex64,
    ) -> Self {
        let coeffs = (0..grid.n_points).map(|k| coeff(grid.freq(k))).collect();
        let deriv_coeffs = (0..grid.n_points).map(|k| deriv(grid.freq(k))).collect();
        Self { grid, coeffs, deriv_coeffs }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_points],
            deriv_coeffs: vec![Complex64::new(0.0, 0.0); grid.n_points],
        }
    }

    /// Mass ∫ f dx = f̂(0).
    pub fn mass(&self) -> f64 {
        self.coeffs[0].re
    }

    /// Weighted sup-norm sup_w (1+|w|^q)(|f̂(w)| + |f̂'(w)|) over the grid
    /// frequencies.
    pub fn bq_norm(&self, q: f64) -> f64 {
        self.bq_norm_argmax(q).0
    }

    /// Norm together with the frequency attaining it; ties resolve to the
    /// smallest |w|.
    pub fn bq_norm_argmax(&self, q: f64) -> (f64, f64) {
        let mut best = (0.0f64, 0.0f64);
        let mut first = true;
        for k in 0..self.grid.n_points {
            let w = self.grid.freq(k);
            let v = (1.0 + w.abs().powf(q)) * (self.coeffs[k].norm() + self.deriv_coeffs[k].norm());
            if first || v > best.0 || (v == best.0 && w.abs() < best.1.abs()) {
                best = (v, w);
                first = false;
            }
        }
        best
    }

    /// Applies the heat multiplier e^{-Δs w^2}; the derivative array follows
    /// the product rule f̂' ↦ e^{-Δs w^2}(f̂' - 2 w Δs f̂). Preserves f̂(0).
    pub fn heat_propagate(&self, ds: f64) -> SpectralFunction {
        assert!(ds >= 0.0, "heat propagation needs ds >= 0");
        let n = self.grid.n_points;
        let mut coeffs = Vec::with_capacity(n);
        let mut deriv = Vec::with_capacity(n);
        for k in 0..n {
            let w = self.grid.freq(k);
            let m = (-ds * w * w).exp();
            coeffs.push(self.coeffs[k] * m);
            deriv.push((self.deriv_coeffs[k] - self.coeffs[k] * (2.0 * w * ds)) * m);
        }
        SpectralFunction { grid: self.grid, coeffs, deriv_coeffs: deriv }
    }

    pub fn sub(&self, other: &SpectralFunction) -> SpectralFunction {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        SpectralFunction {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            deriv_coeffs: self
                .deriv_coeffs
                .iter()
                .zip(&other.deriv_coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &SpectralFunction) -> SpectralFunction {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        SpectralFunction {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            deriv_coeffs: self
                .deriv_coeffs
                .iter()
                .zip(&other.deriv_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> SpectralFunction {
        SpectralFunction {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            deriv_coeffs: self.deriv_coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// CSV rows (w, re, im, re', im') in FFT bin order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "w,re,im,re_deriv,im_deriv")?;
        for k in 0..self.grid.n_points {
            let c = self.coeffs[k];
            let d = self.deriv_coeffs[k];
            writeln!(out, "{},{},{},{},{}", self.grid.freq(k), c.re, c.im, d.re, d.im)?;
        }
        Ok(())
    }
}

/// Convenience: weighted norm of a real-space slice.
pub fn bq_norm_of(f: &GridFunction, q: f64) -> f64 {
    to_spectrum(f).bq_norm(q)
}

/// Evaluates the continuum transform of the samples at an arbitrary frequency
/// (trigonometric interpolation of the data): returns (f̂(w), f̂'(w)).
///
/// Exact for data supported inside [-X, X]; used for resampling spectra at
/// dilated frequencies where interpolation between bins would not meet the
/// norm tolerances.
pub fn nudft_at(f: &GridFunction, w: f64) -> (Complex64, Complex64) {
    let grid = f.grid;
    let n = grid.n_points;
    let dx = grid.dx();
    let rot = Complex64::from_polar(1.0, -w * dx);
    let mut sum0 = Complex64::new(0.0, 0.0);
    let mut sum1 = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::from_polar(1.0, w * grid.half_width); // e^{-i w x_0}
    for i in 0..n {
        // Re-anchor the rotation recurrence to keep phase drift at rounding level.
        if i % 512 == 0 {
            phase = Complex64::from_polar(1.0, -w * grid.x(i));
        }
        let v = f.values[i];
        sum0 += phase * v;
        sum1 += phase * (grid.x(i) * v);
        phase *= rot;
    }
    (sum0 * dx, sum1 * dx * Complex64::new(0.0, -1.0))
}

/// Spectrum of the dilation x ↦ scale · f(scale · x), i.e. ĥ(w) = f̂(w / scale),
/// evaluated exactly from the samples.
pub fn dilate_spectrum(f: &GridFunction, scale: f64) -> SpectralFunction {
    assert!(scale > 0.0, "dilation scale must be positive");
    let grid = f.grid;
    let beta = 1.0 / scale;
    let pairs: Vec<(Complex64, Complex64)> = (0..grid.n_points)
        .into_par_iter()
        .map(|k| {
            let (c, d) = nudft_at(f, beta * grid.freq(k));
            (c, d * beta) // chain rule: d/dw f̂(βw) = β f̂'(βw)
        })
        .collect();
    let coeffs = pairs.iter().map(|p| p.0).collect();
    let deriv_coeffs = pairs.iter().map(|p| p.1).collect();
    SpectralFunction { grid, coeffs, deriv_coeffs }
}

/// Built-in seed profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProfileDescriptor {
    /// amplitude · e^{-(x-center)^2 / (2 sigma^2)}
    Gaussian { amplitude: f64, sigma: f64, center: f64 },
    /// amplitude · f_p^*(x) with f_p^*(x) = sqrt((p+1)/4π) e^{-(p+1)x^2/4}.
    FixedPoint { amplitude: f64, p: f64 },
    /// Compactly supported bump amplitude · e^{1 - 1/(1-(x/width)^2)} on |x| < width.
    Bump { amplitude: f64, width: f64 },
    /// Odd zero-mass profile amplitude · x · e^{-x^2/(2 sigma^2)}.
    Dipole { amplitude: f64, sigma: f64 },
}

impl ProfileDescriptor {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ProfileDescriptor::Gaussian { amplitude, sigma, center } => {
                let z = (x - center) / sigma;
                amplitude * (-0.5 * z * z).exp()
            }
            ProfileDescriptor::FixedPoint { amplitude, p } => {
                amplitude * ((p + 1.0) / (4.0 * std::f64::consts::PI)).sqrt()
                    * (-(p + 1.0) * x * x / 4.0).exp()
            }
            ProfileDescriptor::Bump { amplitude, width } => {
                let z = x / width;
                if z.abs() < 1.0 {
                    amplitude * (1.0 - 1.0 / (1.0 - z * z)).exp()
                } else {
                    0.0
                }
            }
            ProfileDescriptor::Dipole { amplitude, sigma } => {
                let z = x / sigma;
                amplitude * x * (-0.5 * z * z).exp()
            }
        }
    }

    pub fn sample(&self, grid: Grid) -> GridFunction {
        GridFunction::from_fn(grid, |x| self.eval(x))
    }
}

/// Pointwise evaluation on grid nodes.
pub fn sample(profile: &ProfileDescriptor, grid: Grid) -> GridFunction {
    profile.sample(grid)
}
