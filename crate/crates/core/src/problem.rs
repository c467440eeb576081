//! Problem data and the exact algebraic transforms consumed by every other
//! module: hypothesis validation, criticality classification, the time change
//! s(t) = ∫_1^t c(v) dv, and the rescaled coefficients of the renormalized
//! problem at level n.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Tolerance for the criticality comparison when the cross-multiplied test is
/// not exact.
pub const CRITICALITY_TOL: f64 = 1e-12;

/// Superlinear nonlinearity F(u) = Σ_j a_j u^j.
///
/// Degrees are stored as reals: the analytic (theorem) path uses integers
/// ≥ 2, the exploratory sub/critical runs allow fractional leading exponents
/// such as 1.5. Non-integer powers are evaluated with the odd extension
/// sign(u)·|u|^j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonlinearitySeries {
    /// Lowest exponent present (the nonlinearity's alpha).
    pub min_degree: f64,
    /// (degree, coefficient) pairs, non-empty, degrees > 1.
    pub coefficients: Vec<(f64, f64)>,
    /// Radius of analyticity; `f64::INFINITY` for entire series.
    pub radius: f64,
}

impl NonlinearitySeries {
    pub fn new(coefficients: Vec<(f64, f64)>, radius: f64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::hypothesis("H3", "coefficient list is empty"));
        }
        for &(j, a) in &coefficients {
            if !(j > 1.0) || !j.is_finite() {
                return Err(Error::hypothesis(
                    "H3",
                    format!("degree {j} is not superlinear (need degree > 1)"),
                ));
            }
            if !a.is_finite() {
                return Err(Error::hypothesis("H3", format!("coefficient for degree {j} not finite")));
            }
        }
        if !(radius > 0.0) {
            return Err(Error::hypothesis("H3", format!("radius {radius} must be > 0")));
        }
        let min_degree = coefficients.iter().map(|&(j, _)| j).fold(f64::INFINITY, f64::min);
        Ok(Self { min_degree, coefficients, radius })
    }

    /// Single term u^degree with unit coefficient and infinite radius.
    pub fn monomial(degree: f64) -> Self {
        Self::new(vec![(degree, 1.0)], f64::INFINITY).expect("valid monomial")
    }

    /// Pointwise evaluation of F(u).
    pub fn eval(&self, u: f64) -> f64 {
        self.coefficients.iter().map(|&(j, a)| a * signed_pow(u, j)).sum()
    }
}

fn signed_pow(u: f64, degree: f64) -> f64 {
    if degree.fract() == 0.0 && degree.abs() < 64.0 {
        u.powi(degree as i32)
    } else if u >= 0.0 {
        u.powf(degree)
    } else {
        -(-u).powf(degree)
    }
}

/// The two built-in diffusion-coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DiffusionForm {
    /// c(t) = t^p exactly.
    PurePower,
    /// c(t) = t^p (1 + a t^{-beta}), beta > 0, so that c(t) = t^p + o(t^p).
    PerturbedPower { amplitude: f64, decay: f64 },
}

/// Time-dependent diffusion coefficient c(t) with growth exponent p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionDescriptor {
    pub p: f64,
    pub form: DiffusionForm,
}

impl DiffusionDescriptor {
    pub fn pure_power(p: f64) -> Self {
        Self { p, form: DiffusionForm::PurePower }
    }

    pub fn perturbed_power(p: f64, amplitude: f64, decay: f64) -> Self {
        Self { p, form: DiffusionForm::PerturbedPower { amplitude, decay } }
    }

    fn validate(&self) -> Result<()> {
        // p = 0 (classical heat equation) is admitted for the exploratory
        // sub/critical runs and parameter sweeps; negative p is rejected.
        if !(self.p >= 0.0) || !self.p.is_finite() {
            return Err(Error::hypothesis("H2", format!("p must be >= 0, got {}", self.p)));
        }
        if let DiffusionForm::PerturbedPower { amplitude, decay } = self.form {
            if !(decay > 0.0) {
                return Err(Error::hypothesis("H2", format!("perturbation decay beta must be > 0, got {decay}")));
            }
            if !(amplitude > -1.0) || !amplitude.is_finite() {
                return Err(Error::hypothesis(
                    "H2",
                    format!("perturbation amplitude {amplitude} must be > -1 so c(t) > 0 on [1, inf)"),
                ));
            }
        }
        Ok(())
    }

    /// c(t).
    pub fn c(&self, t: f64) -> f64 {
        match self.form {
            DiffusionForm::PurePower => t.powf(self.p),
            DiffusionForm::PerturbedPower { amplitude, decay } => {
                t.powf(self.p) * (1.0 + amplitude * t.powf(-decay))
            }
        }
    }

    /// Accumulated diffusion time s(t) = ∫_1^t c(v) dv, in closed form.
    ///
    /// s(1) = 0 and s is strictly increasing; callers use t ≥ 1.
    pub fn s(&self, t: f64) -> f64 {
        let p = self.p;
        let lead = (t.powf(p + 1.0) - 1.0) / (p + 1.0);
        lead + self.r(t)
    }

    /// Remainder r(t) = s(t) - (t^{p+1}-1)/(p+1); identically zero for the
    /// pure power family and o(t^{p+1}) for the perturbed one.
    pub fn r(&self, t: f64) -> f64 {
        match self.form {
            DiffusionForm::PurePower => 0.0,
            DiffusionForm::PerturbedPower { amplitude, decay } => {
                let e = self.p + 1.0 - decay;
                if e.abs() < 1e-14 {
                    amplitude * t.ln()
                } else {
                    amplitude * (t.powf(e) - 1.0) / e
                }
            }
        }
    }
}

/// Full description of one initial value problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemSpecWire", into = "ProblemSpecWire")]
pub struct ProblemSpec {
    pub diffusion: DiffusionDescriptor,
    pub nonlinearity: NonlinearitySeries,
    pub lambda: f64,
    pub q: f64,
    /// Exponent of the optional reaction factor d(t) = t^r (0 disables it).
    pub reaction_exponent: f64,
}

impl ProblemSpec {
    pub fn p(&self) -> f64 {
        self.diffusion.p
    }

    pub fn alpha(&self) -> f64 {
        self.nonlinearity.min_degree
    }

    /// Exponent e such that lambda_n = lambda * L^{n e}.
    pub fn lambda_exponent(&self) -> f64 {
        let p = self.p();
        (p + 3.0 + 2.0 * self.reaction_exponent - self.alpha() * (p + 1.0)) / 2.0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::hypothesis("H1", format!("spec JSON: {e}")))
    }
}

/// Validating constructor for [`ProblemSpec`]; rejects q ≤ 1, p ≤ 0, |λ| > 1
/// and malformed series with the violated hypothesis label.
pub fn make_problem(
    diffusion: DiffusionDescriptor,
    nonlinearity: NonlinearitySeries,
    lambda: f64,
    q: f64,
    reaction_exponent: f64,
) -> Result<ProblemSpec> {
    diffusion.validate()?;
    // Re-validate series invariants (it may have been built by hand).
    let nonlinearity = NonlinearitySeries::new(nonlinearity.coefficients, nonlinearity.radius)?;
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::hypothesis("H1", format!("q must be > 1, got {q}")));
    }
    if !(lambda.abs() <= 1.0) {
        return Err(Error::hypothesis(
            "lambda",
            format!("lambda must lie in [-1, 1] (paper normalization), got {lambda}"),
        ));
    }
    if !reaction_exponent.is_finite() {
        return Err(Error::hypothesis("H3", "reaction exponent must be finite".to_string()));
    }
    Ok(ProblemSpec { diffusion, nonlinearity, lambda, q, reaction_exponent })
}

/// Criticality of the nonlinearity relative to the diffusion growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalityTag {
    Supercritical,
    Critical,
    Subcritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalityClass {
    pub tag: CriticalityTag,
    pub alpha_critical: f64,
}

/// Classifies against alpha_critical = (p+3+2r)/(p+1).
///
/// Equality is first decided by the cross-multiplied comparison
/// alpha·(p+1) == p+3+2r, which is exact whenever the inputs are exactly
/// representable rationals; otherwise a 1e-12 relative tolerance applies.
pub fn classify_criticality(spec: &ProblemSpec) -> CriticalityClass {
    let p = spec.p();
    let r = spec.reaction_exponent;
    let alpha = spec.alpha();
    let alpha_critical = (p + 3.0 + 2.0 * r) / (p + 1.0);
    let lhs = alpha * (p + 1.0);
    let rhs = p + 3.0 + 2.0 * r;
    let tol = CRITICALITY_TOL * rhs.abs().max(1.0);
    let tag = if lhs == rhs || (lhs - rhs).abs() <= tol {
        CriticalityTag::Critical
    } else if alpha > alpha_critical {
        CriticalityTag::Supercritical
    } else {
        CriticalityTag::Subcritical
    };
    CriticalityClass { tag, alpha_critical }
}

/// Accumulated diffusion time of the renormalized problem at level n,
/// s_n(t) = ∫_1^t c_n(v) dv with c_n(t) = L^{-np} c(L^n t).
pub fn s_n(diffusion: &DiffusionDescriptor, l: f64, n: u32, t: f64) -> f64 {
    rescale_diffusion(diffusion, n, l).s(t)
}

fn rescale_diffusion(d: &DiffusionDescriptor, n: u32, l: f64) -> DiffusionDescriptor {
    match d.form {
        DiffusionForm::PurePower => *d,
        DiffusionForm::PerturbedPower { amplitude, decay } => DiffusionDescriptor {
            p: d.p,
            form: DiffusionForm::PerturbedPower {
                amplitude: amplitude * l.powf(-(n as f64) * decay),
                decay,
            },
        },
    }
}

/// Coefficients of the renormalized problem at level n: diffusion c_n,
/// coupling lambda_n = L^{n[p+3+2r-alpha(p+1)]/2} lambda, and series
/// coefficients a_j -> L^{n(alpha-j)(p+1)/2} a_j. The composition law
/// rescale(rescale(spec, m, L), n, L) = rescale(spec, m+n, L) holds.
pub fn rescale_coefficients(spec: &ProblemSpec, n: u32, l: f64) -> ProblemSpec {
    let nf = n as f64;
    let p = spec.p();
    let alpha = spec.alpha();
    let coefficients = spec
        .nonlinearity
        .coefficients
        .iter()
        .map(|&(j, a)| (j, a * l.powf(nf * (alpha - j) * (p + 1.0) / 2.0)))
        .collect();
    ProblemSpec {
        diffusion: rescale_diffusion(&spec.diffusion, n, l),
        nonlinearity: NonlinearitySeries {
            min_degree: spec.nonlinearity.min_degree,
            coefficients,
            radius: spec.nonlinearity.radius,
        },
        lambda: spec.lambda * l.powf(nf * spec.lambda_exponent()),
        q: spec.q,
        reaction_exponent: spec.reaction_exponent,
    }
}

/// Wire form of [`ProblemSpec`]: the JSON schema used by the harness.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpecWire {
    p: f64,
    c_form: String,
    #[serde(default)]
    c_params: Vec<f64>,
    lambda: f64,
    q: f64,
    #[serde(default)]
    r: f64,
    coefficients: Vec<(f64, f64)>,
    /// `null` (or absent) means an entire series.
    #[serde(default)]
    radius: Option<f64>,
}

impl TryFrom<ProblemSpecWire> for ProblemSpec {
    type Error = Error;

    fn try_from(w: ProblemSpecWire) -> Result<Self> {
        let form = match w.c_form.as_str() {
            "pure_power" => {
                if !w.c_params.is_empty() {
                    return Err(Error::hypothesis("H2", "pure_power takes no c_params"));
                }
                DiffusionForm::PurePower
            }
            "perturbed_power" => {
                if w.c_params.len() != 2 {
                    return Err(Error::hypothesis("H2", "perturbed_power needs c_params [amplitude, decay]"));
                }
                DiffusionForm::PerturbedPower { amplitude: w.c_params[0], decay: w.c_params[1] }
            }
            other => return Err(Error::hypothesis("H2", format!("unknown c_form '{other}'"))),
        };
        let series = NonlinearitySeries::new(w.coefficients, w.radius.unwrap_or(f64::INFINITY))?;
        make_problem(DiffusionDescriptor { p: w.p, form }, series, w.lambda, w.q, w.r)
    }
}

impl From<ProblemSpec> for ProblemSpecWire {
    fn from(s: ProblemSpec) -> Self {
        let (c_form, c_params) = match s.diffusion.form {
            DiffusionForm::PurePower => ("pure_power".to_string(), vec![]),
            DiffusionForm::PerturbedPower { amplitude, decay } => {
                ("perturbed_power".to_string(), vec![amplitude, decay])
            }
        };
        ProblemSpecWire {
            p: s.diffusion.p,
            c_form,
            c_params,
            lambda: s.lambda,
            q: s.q,
            r: s.reaction_exponent,
            coefficients: s.nonlinearity.coefficients,
            radius: if s.nonlinearity.radius.is_finite() { Some(s.nonlinearity.radius) } else { None },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic_spec() -> ProblemSpec {
        make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(3.0),
            1.0,
            2.0,
            0.0,
        )
        .unwrap()
    }

    /// Adaptive Simpson, used only as an independent oracle for s(t).
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, m);
            let right = simpson(f, m, b);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol / 2.0, depth - 1) + rec(f, m, b, right, tol / 2.0, depth - 1)
            }
        }
        rec(f, a, b, simpson(f, a, b), tol, 40)
    }

    #[test]
    fn make_problem_accepts_valid_spec() {
        let spec = cubic_spec();
        assert_eq!(spec.p(), 1.0);
        assert_eq!(spec.alpha(), 3.0);
    }

    #[test]
    fn make_problem_rejects_lambda_out_of_range() {
        let err = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(3.0),
            2.0,
            2.0,
            0.0,
        )
        .unwrap_err();
        match err {
            Error::InvalidHypothesis { hypothesis, .. } => assert_eq!(hypothesis, "lambda"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn make_problem_rejects_nonpositive_p() {
        let err = make_problem(
            DiffusionDescriptor::pure_power(-0.5),
            NonlinearitySeries::monomial(3.0),
            1.0,
            2.0,
            0.0,
        )
        .unwrap_err();
        match err {
            Error::InvalidHypothesis { hypothesis, .. } => assert_eq!(hypothesis, "H2"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn make_problem_rejects_q_at_most_one() {
        let err = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(3.0),
            1.0,
            1.0,
            0.0,
        )
        .unwrap_err();
        match err {
            Error::InvalidHypothesis { hypothesis, .. } => assert_eq!(hypothesis, "H1"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn classify_examples() {
        let spec = cubic_spec();
        let class = classify_criticality(&spec);
        assert_eq!(class.tag, CriticalityTag::Supercritical);
        assert_eq!(class.alpha_critical, 2.0);

        let quad = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::monomial(2.0),
            1.0,
            2.0,
            0.0,
        )
        .unwrap();
        assert_eq!(classify_criticality(&quad).tag, CriticalityTag::Critical);

        // p=0, r=1, alpha=4: alpha_critical = (0+3+2)/1 = 5, hence subcritical.
        let reacting = make_problem(
            DiffusionDescriptor::pure_power(0.0),
            NonlinearitySeries::monomial(4.0),
            1.0,
            2.0,
            1.0,
        )
        .unwrap();
        let class = classify_criticality(&reacting);
        assert_eq!(class.alpha_critical, 5.0);
        assert_eq!(class.tag, CriticalityTag::Subcritical);
    }

    #[test]
    fn classify_ignores_higher_degree_terms() {
        let base = cubic_spec();
        let augmented = make_problem(
            base.diffusion,
            NonlinearitySeries::new(vec![(3.0, 1.0), (5.0, 0.2), (7.0, -0.05)], f64::INFINITY).unwrap(),
            base.lambda,
            base.q,
            0.0,
        )
        .unwrap();
        assert_eq!(classify_criticality(&base), classify_criticality(&augmented));
    }

    #[test]
    fn s_of_pure_power_closed_form() {
        let d = DiffusionDescriptor::pure_power(1.0);
        assert!((d.s(3f64.sqrt()) - 1.0).abs() < 1e-14);
        assert_eq!(d.s(1.0), 0.0);
    }

    #[test]
    fn s_of_matches_quadrature_oracle() {
        let d = DiffusionDescriptor::perturbed_power(1.0, 0.5, 2.0);
        let oracle = adaptive_simpson(&|v| d.c(v), 1.0, 2.0, 1e-13);
        assert!((d.s(2.0) - oracle).abs() <= 1e-10, "closed form {} vs oracle {}", d.s(2.0), oracle);
    }

    #[test]
    fn s_of_log_case_matches_quadrature_oracle() {
        // decay = p+1 triggers the logarithmic antiderivative.
        let d = DiffusionDescriptor::perturbed_power(1.0, 0.3, 2.0);
        let oracle = adaptive_simpson(&|v| d.c(v), 1.0, 4.0, 1e-13);
        assert!((d.s(4.0) - oracle).abs() <= 1e-10);
    }

    #[test]
    fn r_of_examples() {
        let pure = DiffusionDescriptor::pure_power(1.7);
        for t in [1.0, 2.0, 10.0, 1e6] {
            assert_eq!(pure.r(t), 0.0);
        }
        let d = DiffusionDescriptor::perturbed_power(1.0, 1.0, 0.5);
        let r4 = d.r(4.0);
        assert!(r4 > 0.0 && r4 < 16.0, "r(4) = {r4}");
        assert_eq!(d.r(1.0), 0.0);
    }

    #[test]
    fn s_strictly_increasing() {
        for d in [
            DiffusionDescriptor::pure_power(0.5),
            DiffusionDescriptor::pure_power(2.0),
            DiffusionDescriptor::perturbed_power(1.0, 1.0, 0.5),
            DiffusionDescriptor::perturbed_power(1.0, -0.5, 1.0),
        ] {
            let mut prev = d.s(1.0);
            for k in 1..=100 {
                let t = 1.0 + 15.0 * k as f64 / 100.0;
                let cur = d.s(t);
                assert!(cur > prev, "s not increasing at t={t} for {d:?}");
                prev = cur;
            }
        }
    }

    #[test]
    fn rescale_lambda_example() {
        let spec = cubic_spec();
        let spec1 = rescale_coefficients(&spec, 1, 2.0);
        // lambda_1 = 2^{(4-6)/2} = 1/2.
        assert!((spec1.lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rescale_identity_at_n0() {
        let spec = cubic_spec();
        assert_eq!(rescale_coefficients(&spec, 0, 2.0), spec);
    }

    #[test]
    fn rescale_higher_coefficient_example() {
        let spec = make_problem(
            DiffusionDescriptor::pure_power(1.0),
            NonlinearitySeries::new(vec![(3.0, 1.0), (5.0, 0.2)], f64::INFINITY).unwrap(),
            1.0,
            2.0,
            0.0,
        )
        .unwrap();
        let spec1 = rescale_coefficients(&spec, 1, 2.0);
        let a5 = spec1.nonlinearity.coefficients.iter().find(|&&(j, _)| j == 5.0).unwrap().1;
        // 0.2 * 2^{(3-5)*(1+1)/2} = 0.2 * 2^{-2} = 0.05.
        assert!((a5 - 0.05).abs() < 1e-16);
    }

    #[test]
    fn rescale_composition_law() {
        let spec = make_problem(
            DiffusionDescriptor::perturbed_power(1.3, 0.4, 0.7),
            NonlinearitySeries::new(vec![(3.0, 0.8), (4.0, -0.1)], 2.5).unwrap(),
            -0.7,
            2.5,
            0.5,
        )
        .unwrap();
        let l = 1.9;
        for m in 0..=5u32 {
            for n in 0..=5u32 {
                let a = rescale_coefficients(&rescale_coefficients(&spec, m, l), n, l);
                let b = rescale_coefficients(&spec, m + n, l);
                let close = |x: f64, y: f64| (x - y).abs() <= 1e-14 * x.abs().max(y.abs()).max(1e-30);
                assert!(close(a.lambda, b.lambda), "lambda m={m} n={n}");
                for (ca, cb) in a.nonlinearity.coefficients.iter().zip(&b.nonlinearity.coefficients) {
                    assert!(close(ca.1, cb.1), "coefficient m={m} n={n}");
                }
                match (a.diffusion.form, b.diffusion.form) {
                    (
                        DiffusionForm::PerturbedPower { amplitude: aa, .. },
                        DiffusionForm::PerturbedPower { amplitude: ab, .. },
                    ) => assert!(close(aa, ab), "amplitude m={m} n={n}"),
                    _ => panic!("expected perturbed forms"),
                }
            }
        }
    }

    #[test]
    fn s_n_identity_for_perturbed_power() {
        // r_n(t) = L^{-n(p+1)} [r(L^n t) - r(L^n)].
        let d = DiffusionDescriptor::perturbed_power(1.0, 1.0, 0.5);
        let (l, n, t) = (2.0f64, 3u32, 1.7f64);
        let lhs = s_n(&d, l, n, t) - (t.powf(2.0) - 1.0) / 2.0;
        let ln = l.powi(n as i32);
        let rhs = (d.r(ln * t) - d.r(ln)) / ln.powf(2.0);
        assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn json_round_trip_exact_keys() {
        let spec = make_problem(
            DiffusionDescriptor::perturbed_power(1.0, 0.5, 2.0),
            NonlinearitySeries::new(vec![(3.0, 1.0), (5.0, 0.2)], 2.0).unwrap(),
            -1.0,
            2.0,
            0.0,
        )
        .unwrap();
        let text = spec.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["p", "c_form", "c_params", "lambda", "q", "r", "coefficients", "radius"] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        let back = ProblemSpec::from_json(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn json_null_radius_means_entire() {
        let text = r#"{"p":1.0,"c_form":"pure_power","c_params":[],"lambda":1.0,"q":2.0,"r":0.0,
                       "coefficients":[[3,1.0]],"radius":null}"#;
        let spec = ProblemSpec::from_json(text).unwrap();
        assert!(spec.nonlinearity.radius.is_infinite());
    }

    #[test]
    fn signed_pow_odd_extension() {
        assert!((signed_pow(-2.0, 3.0) - -8.0).abs() < 1e-15);
        assert!((signed_pow(-4.0, 1.5) - -8.0).abs() < 1e-12);
        assert_eq!(signed_pow(0.0, 1.5), 0.0);
    }
}
