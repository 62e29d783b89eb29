//! Finite-sample verification of the properties of `k_θ(K, r)` and of the
//! numeric machinery, with machine-readable reports.
//!
//! Every report carries one tolerance and one error per observation; a report
//! passes exactly when every error is at most the tolerance. Sign checks use
//! an indicator error (0 when the sign is right, 1 otherwise) with tolerance 0.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    self, abs_k_sensitivity, f_prime, k_theta_at, k_theta_direct, series_k_small_k, SpiralCurvatureQuery, SEAM_TERMS,
    SEAM_THRESHOLD,
};
use crate::curves::{
    angle_to_parallel, arc_length, coordinate_curve, geodesic_curvature_numeric, plane_log_spiral,
    pseudosphere_loxodrome, sphere_loxodrome, ChartCurve, CoordinateCurveKind,
};
use crate::error::{GeomError, Result};
use crate::liouville::liouville_breakdown;
use crate::numdiff::{extrapolate_sequence, richardson_second_derivative};
use crate::polar::{circle_curvature, polar_metric, PolarSpiral};
use crate::quadrature;
use crate::surface::{gaussian_curvature, unit_normal, JetMode, Orientation, SurfacePatch};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub input: Vec<f64>,
    pub expected: f64,
    pub actual: f64,
    pub error: f64,
}

impl Observation {
    pub fn new(input: Vec<f64>, expected: f64, actual: f64, error: f64) -> Self {
        Observation { input, expected, actual, error }
    }

    /// Error `|actual - expected| / |expected|`, or absolute when `expected` is 0.
    pub fn relative(input: Vec<f64>, expected: f64, actual: f64) -> Self {
        let diff = (actual - expected).abs();
        let error = if expected == 0.0 { diff } else { diff / expected.abs() };
        Observation::new(input, expected, actual, error)
    }

    pub fn absolute(input: Vec<f64>, expected: f64, actual: f64) -> Self {
        Observation::new(input, expected, actual, (actual - expected).abs())
    }

    /// Sign check: `expected` is the required sign (-1, 0 or 1) and the error is
    /// 0 when `actual` has it, 1 otherwise. `zero_band` is the largest `|actual|`
    /// counted as zero when the required sign is 0.
    pub fn sign(input: Vec<f64>, expected: f64, actual: f64, zero_band: f64) -> Self {
        let ok = if expected > 0.0 {
            actual > 0.0
        } else if expected < 0.0 {
            actual < 0.0
        } else {
            actual.abs() <= zero_band
        };
        Observation::new(input, expected, actual, if ok { 0.0 } else { 1.0 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub passed: bool,
    pub tolerance: f64,
    pub observations: Vec<Observation>,
    /// Why the check could not be evaluated, when it could not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>, tolerance: f64, observations: Vec<Observation>) -> Self {
        let passed = observations.iter().all(|o| o.error <= tolerance);
        VerificationReport { check_name: check_name.into(), passed, tolerance, observations, failure: None }
    }

    /// A failed report for a check that raised an error.
    pub fn errored(check_name: impl Into<String>, tolerance: f64, err: &GeomError) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            passed: false,
            tolerance,
            observations: Vec::new(),
            failure: Some(err.to_string()),
        }
    }

    /// Concatenates the observations of reports sharing one tolerance.
    pub fn combine(check_name: impl Into<String>, tolerance: f64, parts: Vec<Result<VerificationReport>>) -> Self {
        let name = check_name.into();
        let mut observations = Vec::new();
        for part in parts {
            match part {
                Ok(report) => observations.extend(report.observations),
                Err(err) => return VerificationReport::errored(name, tolerance, &err),
            }
        }
        VerificationReport::new(name, tolerance, observations)
    }

    /// The largest observation error (NaN if any error is NaN).
    pub fn max_error(&self) -> f64 {
        self.observations.iter().map(|o| o.error).fold(0.0, |acc, e| {
            if e.is_nan() || acc.is_nan() {
                f64::NAN
            } else {
                acc.max(e)
            }
        })
    }

    /// Line-oriented rendering: a header line, then one indented line per
    /// observation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} tolerance={:e} max_error={:e} observations={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            self.tolerance,
            self.max_error(),
            self.observations.len()
        );
        if let Some(msg) = &self.failure {
            let _ = writeln!(out, "  failure: {msg}");
        }
        for o in &self.observations {
            let input: Vec<String> = o.input.iter().map(|x| format!("{x:e}")).collect();
            let _ = writeln!(
                out,
                "  input=({}) expected={:e} actual={:e} error={:e}",
                input.join(", "),
                o.expected,
                o.actual,
                o.error
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only plain data")
    }
}

/// Checks `k_θ(K, r) / k_θ(K2, r) → 1`. Each observation's error is
/// `|ratio − 1|` divided by the leading-order envelope `|K − K2| r²/3`, so the
/// tolerance 1.5 is the envelope with a 50% margin.
pub fn verify_ratio_limit(k: f64, k2: f64, theta: f64, r_sequence: &[f64]) -> Result<VerificationReport> {
    check_decreasing(r_sequence, "r sequence")?;
    if closed_form::cos_angle(theta) == 0.0 {
        return Err(GeomError::Domain("θ = π/2 makes both curvatures vanish".into()));
    }
    let mut observations = Vec::with_capacity(r_sequence.len());
    for &r in r_sequence {
        let ratio = k_theta_at(k, r, theta)? / k_theta_at(k2, r, theta)?;
        let deviation = (ratio - 1.0).abs();
        let envelope = ((k - k2).abs() * r * r / 3.0).max(f64::EPSILON);
        observations.push(Observation::new(vec![k, k2, theta, r], 1.0, ratio, deviation / envelope));
    }
    Ok(VerificationReport::new("ratio_limit", 1.5, observations))
}

/// Least-squares slope of `ln |ratio − 1|` against `ln r`; it should be 2.
pub fn verify_ratio_convergence_rate(k: f64, k2: f64, theta: f64, r_sequence: &[f64]) -> Result<VerificationReport> {
    check_decreasing(r_sequence, "r sequence")?;
    if r_sequence.len() < 2 || k == k2 {
        return Err(GeomError::Domain("a slope needs two radii and K ≠ K2".into()));
    }
    let mut points = Vec::with_capacity(r_sequence.len());
    for &r in r_sequence {
        let ratio = k_theta_at(k, r, theta)? / k_theta_at(k2, r, theta)?;
        points.push((r.ln(), (ratio - 1.0).abs().ln()));
    }
    let slope = least_squares_slope(&points);
    let input = vec![k, k2, theta, r_sequence[0], r_sequence[r_sequence.len() - 1]];
    Ok(VerificationReport::new("ratio_convergence_rate", 0.1, vec![Observation::absolute(input, 2.0, slope)]))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn check_decreasing(seq: &[f64], what: &str) -> Result<()> {
    if seq.is_empty() || seq.iter().any(|x| !(*x > 0.0)) || seq.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(GeomError::Domain(format!("{what} must be positive and strictly decreasing")));
    }
    Ok(())
}

/// Default steps for [`verify_derivative_at_zero`]: `h_i = 0.05 / r² / 2^i`.
pub fn default_h_sequence(r: f64) -> Vec<f64> {
    (0..6).map(|i| 0.05 / (r * r) / f64::powi(2.0, i)).collect()
}

/// Extrapolated central differences `(k(h) − k(−h)) / 2h` in `K` at `K = 0`
/// against `−(r/3) cos θ`, relative error (absolute when the target is 0).
pub fn verify_derivative_at_zero(r: f64, theta: f64, h_sequence: &[f64]) -> Result<VerificationReport> {
    check_decreasing(h_sequence, "h sequence")?;
    let mut quotients = Vec::with_capacity(h_sequence.len());
    for &h in h_sequence {
        quotients.push((k_theta_at(h, r, theta)? - k_theta_at(-h, r, theta)?) / (2.0 * h));
    }
    let estimate = extrapolate_sequence(h_sequence, &quotients).value;
    let target = -(r / 3.0) * closed_form::cos_angle(theta);
    let h_min = h_sequence[h_sequence.len() - 1];
    Ok(VerificationReport::new(
        "derivative_at_zero",
        1e-8,
        vec![Observation::relative(vec![r, theta, h_min], target, estimate)],
    ))
}

/// `f'(t) < 0` at every grid point and `f` strictly decreasing between
/// consecutive points of the (sorted) grid.
pub fn verify_f_monotone(r: f64, t_grid: &[f64]) -> Result<VerificationReport> {
    let mut grid = t_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let mut observations = Vec::with_capacity(2 * grid.len());
    let mut previous: Option<(f64, f64)> = None;
    for &t in &grid {
        let slope = f_prime(t, r)?;
        observations.push(Observation::sign(vec![t, r], -1.0, slope, 0.0));
        let value = closed_form::f(t, r)?;
        if let Some((t0, f0)) = previous {
            if t > t0 {
                observations.push(Observation::sign(vec![t0, t, r], -1.0, value - f0, 0.0));
            }
        }
        previous = Some((t, value));
    }
    Ok(VerificationReport::new("f_monotone", 0.0, observations))
}

/// First zero of `f(K, ·)`: `π/(2√K)` for `K > 0`, none otherwise.
pub fn positive_curvature_limit(k: f64) -> f64 {
    if k > 0.0 {
        FRAC_PI_2 / k.sqrt()
    } else {
        f64::INFINITY
    }
}

/// Signs of `k_θ` and of `∂|k_θ|/∂K` over `theta_grid`. The first observation
/// records the radius limit `r < π/(2√K)` (infinite for `K ≤ 0`).
pub fn verify_sign_theorem(k: f64, theta_grid: &[f64], r: f64) -> Result<VerificationReport> {
    let f_value = closed_form::f(k, r)?;
    if !(f_value > 0.0) {
        return Err(GeomError::PreconditionFailed(format!(
            "f(K = {k}, r = {r}) = {f_value} is not positive; r must stay below {}",
            positive_curvature_limit(k)
        )));
    }
    let limit = positive_curvature_limit(k);
    let mut observations = vec![Observation::new(vec![k, r], limit, r, if r < limit { 0.0 } else { 1.0 })];
    for &theta in theta_grid {
        let k_value = k_theta_at(k, r, theta)?;
        let cos = closed_form::cos_angle(theta);
        let expected_sign = if cos > 0.0 {
            1.0
        } else if cos < 0.0 {
            -1.0
        } else {
            0.0
        };
        observations.push(Observation::sign(vec![k, r, theta, 0.0], expected_sign, k_value, 0.0));
        let sensitivity = abs_k_sensitivity(k, r, theta)?;
        let expected = if cos == 0.0 { 0.0 } else { -1.0 };
        observations.push(Observation::sign(vec![k, r, theta, 1.0], expected, sensitivity, 1e-12));
    }
    Ok(VerificationReport::new("sign_theorem", 0.0, observations))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinSurface {
    Plane,
    Sphere,
    Pseudosphere,
}

impl BuiltinSurface {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinSurface::Plane => "plane",
            BuiltinSurface::Sphere => "sphere",
            BuiltinSurface::Pseudosphere => "pseudosphere",
        }
    }
}

/// Sample parameters and reference curvatures along the constructed curve.
struct SampledCurve {
    curve: ChartCurve,
    samples: Vec<(f64, f64)>,
    relative: bool,
}

fn spiral_samples(surface: BuiltinSurface, radius: f64, theta: f64, count: usize) -> Result<SampledCurve> {
    if count < 2 {
        return Err(GeomError::Domain(format!("need at least 2 samples, got {count}")));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(GeomError::Domain(format!("θ = {theta} must lie in (0, π)")));
    }
    let cos = closed_form::cos_angle(theta);
    let frac = |i: usize| i as f64 / (count - 1) as f64;
    match surface {
        BuiltinSurface::Plane => {
            let a = theta.tan();
            // γ(t) = e^{-at}(cos t, sin t) has angle arctan a; reversed it has angle θ when a < 0.
            let mut curve = plane_log_spiral(a)?;
            if theta > FRAC_PI_2 {
                curve = curve.reversed();
            }
            let samples = (0..count)
                .map(|i| {
                    let r = (1.0 - 4.0 * frac(i)).exp();
                    (-r.ln() / a, cos / r)
                })
                .collect();
            Ok(SampledCurve { curve, samples, relative: true })
        }
        BuiltinSurface::Sphere => {
            let a = cos / theta.sin();
            let curve = sphere_loxodrome(radius, a)?;
            // Two bands that avoid the equator, where k vanishes.
            let first = count / 2;
            let samples = (0..count)
                .map(|i| {
                    let t = if i < first {
                        0.05 + 0.65 * i as f64 / (first.max(2) - 1) as f64
                    } else {
                        0.875 + 0.625 * (i - first) as f64 / ((count - first).max(2) - 1) as f64
                    };
                    let v = 2.0 * t;
                    (t, cos * v.cos() / v.sin() / radius)
                })
                .collect();
            Ok(SampledCurve { curve, samples, relative: true })
        }
        BuiltinSurface::Pseudosphere => {
            let curve = pseudosphere_loxodrome(radius, theta, 0.0)?;
            let samples = (0..count).map(|i| (0.02 + 1.53 * frac(i), -cos / radius)).collect();
            Ok(SampledCurve { curve, samples, relative: false })
        }
    }
}

/// Numeric geodesic curvature along the plane spiral, sphere loxodrome or
/// pseudosphere loxodrome of angle `θ` against the closed forms
/// `cos θ / r`, `cot(r/R) cos θ / R` and `−cos θ / R`.
pub fn verify_numeric_vs_closed_form(
    surface: BuiltinSurface,
    radius: f64,
    theta: f64,
    sample_count: usize,
) -> Result<VerificationReport> {
    verify_numeric_vs_closed_form_with(surface, radius, theta, sample_count, JetMode::Analytic, 1.0)
}

pub fn verify_numeric_vs_closed_form_with(
    surface: BuiltinSurface,
    radius: f64,
    theta: f64,
    sample_count: usize,
    jets: JetMode,
    tol_scale: f64,
) -> Result<VerificationReport> {
    let sampled = spiral_samples(surface, radius, theta, sample_count)?;
    let curve = sampled.curve.with_jet_mode(jets);
    let mut observations = Vec::with_capacity(sampled.samples.len());
    for (t, expected) in sampled.samples {
        let k = geodesic_curvature_numeric(&curve, t)?;
        let input = vec![radius, theta, t];
        observations.push(if sampled.relative {
            Observation::relative(input, expected, k)
        } else {
            Observation::absolute(input, expected, k)
        });
    }
    Ok(VerificationReport::new(format!("numeric_vs_closed_form_{}", surface.name()), 1e-5 * tol_scale, observations))
}

/// `(√G)'' + K√G` by extrapolated second differences at `count` radii.
pub fn verify_jacobi_residual(k: f64, count: usize) -> Result<VerificationReport> {
    let metric = polar_metric(k);
    let r_max = if k > 0.0 { 0.9 * PI / k.sqrt() } else { 2.0 };
    let mut observations = Vec::with_capacity(count);
    for i in 1..=count {
        let r = r_max * i as f64 / count as f64;
        let h = (1e-2f64).min(0.4 * r);
        let second = richardson_second_derivative(|s| Ok(metric.sqrt_g(s)), r, h, 3)?.value;
        observations.push(Observation::absolute(vec![k, r], 0.0, second + k * metric.sqrt_g(r)));
    }
    Ok(VerificationReport::new("jacobi_residual", 1e-6, observations))
}

/// `√G(r₀) < 1e-7` and numeric `(√G)'(r₀) ∈ [1 − 1e-6, 1 + 1e-6]` at `r₀ = 1e-8`.
pub fn verify_polar_limits(k: f64) -> VerificationReport {
    let metric = polar_metric(k);
    let r0 = 1e-8;
    let slope = (metric.sqrt_g(2.0 * r0) - metric.sqrt_g(r0 / 2.0)) / (1.5 * r0);
    let value = metric.sqrt_g(r0);
    VerificationReport::new(
        "polar_limits",
        1e-6,
        vec![
            Observation::new(vec![k, r0, 0.0], 0.0, value, if value < 1e-7 { 0.0 } else { f64::INFINITY }),
            Observation::absolute(vec![k, r0, 1.0], 1.0, slope),
        ],
    )
}

/// Direct and series evaluation of `k_θ` on the ring `|K| r² ∈ [0.9e-4, 1.1e-4]`.
pub fn verify_seam_agreement(theta: f64, points: usize) -> Result<VerificationReport> {
    let mut observations = Vec::new();
    for &r in &[0.1, 0.5, 1.0, 3.0] {
        for i in 0..points {
            let z = SEAM_THRESHOLD * (0.9 + 0.2 * i as f64 / (points - 1).max(1) as f64);
            for k in [z / (r * r), -z / (r * r)] {
                let q = SpiralCurvatureQuery::new(k, r, theta)?;
                let direct = k_theta_direct(&q);
                let series = series_k_small_k(k, r, theta, SEAM_TERMS)?;
                observations.push(Observation::relative(vec![k, r, theta], direct, series));
            }
        }
    }
    Ok(VerificationReport::new("seam_agreement", 1e-12, observations))
}

/// Jumps of `k_θ` across `K = 0` and across the series threshold, relative
/// to the value at the crossing.
pub fn verify_seam_continuity(theta: f64) -> Result<VerificationReport> {
    let mut observations = Vec::new();
    for &r in &[0.1, 0.5, 1.0, 3.0] {
        let at_zero = k_theta_at(0.0, r, theta)?;
        for k in [f64::MIN_POSITIVE, 1e-300, 1e-15, -1e-300, -f64::MIN_POSITIVE, -1e-15] {
            observations.push(Observation::relative(vec![r, k], at_zero, k_theta_at(k, r, theta)?));
        }
        let edge = SEAM_THRESHOLD / (r * r);
        for k in [edge, -edge] {
            let below = k_theta_at(k * (1.0 - 1e-15), r, theta)?;
            let above = k_theta_at(k * (1.0 + 1e-15), r, theta)?;
            observations.push(Observation::relative(vec![r, k], below, above));
        }
    }
    Ok(VerificationReport::new("seam_continuity", 1e-12, observations))
}

/// Configuration of [`run_battery`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryConfig {
    pub jets: JetMode,
    pub tol_scale: f64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { jets: JetMode::Analytic, tol_scale: 1.0 }
    }
}

impl BatteryConfig {
    /// Multiplier for checks that depend on surface jets: 100 with
    /// finite-difference jets, times the user scale.
    fn jet_scale(&self) -> f64 {
        let base = match self.jets {
            JetMode::Analytic => 1.0,
            JetMode::FiniteDifference => 100.0,
        };
        base * self.tol_scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Forms,
    Curves,
    Liouville,
    Analysis,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

fn settle(name: &str, tolerance: f64, result: Result<VerificationReport>) -> VerificationReport {
    match result {
        Ok(mut report) => {
            report.check_name = name.to_string();
            report
        }
        Err(err) => VerificationReport::errored(name, tolerance, &err),
    }
}

fn builtin_patches(mode: JetMode) -> Vec<(BuiltinSurface, f64, SurfacePatch)> {
    let mut out = vec![(BuiltinSurface::Plane, 1.0, SurfacePatch::plane().with_jet_mode(mode))];
    for r in [0.5, 1.0, 2.0] {
        out.push((BuiltinSurface::Sphere, r, SurfacePatch::sphere(r).expect("valid radius").with_jet_mode(mode)));
    }
    for r in [0.5, 1.0, 2.0] {
        out.push((
            BuiltinSurface::Pseudosphere,
            r,
            SurfacePatch::pseudosphere(r).expect("valid radius").with_jet_mode(mode),
        ));
    }
    out
}

fn forms_suite(cfg: &BatteryConfig) -> Vec<VerificationReport> {
    let scale = cfg.jet_scale();
    let mut curved = Vec::new();
    let mut flat = Vec::new();
    let mut normals = Vec::new();
    for (surface, radius, patch) in builtin_patches(cfg.jets) {
        let vs: &[f64] = match surface {
            BuiltinSurface::Plane => &[0.1, 1.0, 10.0],
            BuiltinSurface::Sphere => &[0.3, 1.0, FRAC_PI_2, 2.5],
            BuiltinSurface::Pseudosphere => &[0.01, 0.3, 1.0, 1.5],
        };
        for &u in &[0.0, 1.3, 4.0] {
            for &v in vs {
                let input = vec![radius, u, v];
                match gaussian_curvature(&patch, u, v) {
                    Ok(k) => match patch.known_k() {
                        Some(0.0) | None => flat.push(Observation::absolute(input.clone(), 0.0, k)),
                        Some(expected) => curved.push(Observation::relative(input.clone(), expected, k)),
                    },
                    Err(err) => return vec![VerificationReport::errored("gaussian_curvature", 1e-6 * scale, &err)],
                }
                if let Ok(jet) = patch.jet(u, v) {
                    let flip = unit_normal(&jet, Orientation::Positive)
                        .and_then(|a| unit_normal(&jet, Orientation::Negative).map(|b| (a + b).norm()));
                    let error = flip.unwrap_or(f64::NAN);
                    normals.push(Observation::new(input, 0.0, error, error));
                }
            }
        }
    }
    vec![
        VerificationReport::new("gaussian_curvature_curved", 1e-6 * scale, curved),
        VerificationReport::new("gaussian_curvature_plane", 1e-8 * scale, flat),
        VerificationReport::new("normal_orientation_flip", 1e-15, normals),
    ]
}

fn curve_families(mode: JetMode) -> Result<Vec<(String, ChartCurve, Vec<f64>)>> {
    let sample = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    };
    let plane = SurfacePatch::plane();
    let sphere = SurfacePatch::sphere(1.0)?;
    let pseudo = SurfacePatch::pseudosphere(1.0)?;
    let families = vec![
        ("plane_spiral".to_string(), plane_log_spiral(1.0)?, sample(-1.0, 3.0, 50)),
        ("sphere_loxodrome".to_string(), sphere_loxodrome(1.0, 1.0)?, sample(0.05, 1.5, 50)),
        ("pseudosphere_loxodrome".to_string(), pseudosphere_loxodrome(1.0, FRAC_PI_3, 0.0)?, sample(0.02, 1.55, 50)),
        (
            "plane_circle".to_string(),
            coordinate_curve(&plane, CoordinateCurveKind::Parallel, 1.5)?,
            sample(0.0, 6.0, 10),
        ),
        (
            "sphere_parallel".to_string(),
            coordinate_curve(&sphere, CoordinateCurveKind::Parallel, 1.0)?,
            sample(0.0, 6.0, 10),
        ),
        (
            "pseudosphere_parallel".to_string(),
            coordinate_curve(&pseudo, CoordinateCurveKind::Parallel, 0.7)?,
            sample(0.0, 6.0, 10),
        ),
        ("plane_ray".to_string(), coordinate_curve(&plane, CoordinateCurveKind::Meridian, 0.4)?, sample(0.2, 5.0, 10)),
        (
            "sphere_meridian".to_string(),
            coordinate_curve(&sphere, CoordinateCurveKind::Meridian, 0.4)?,
            sample(0.2, 2.9, 10),
        ),
        (
            "pseudosphere_meridian".to_string(),
            coordinate_curve(&pseudo, CoordinateCurveKind::Meridian, 0.4)?,
            // |φ_v| = R cot v vanishes at the rim; stop short of it.
            sample(0.02, 1.5, 10),
        ),
    ];
    Ok(families.into_iter().map(|(n, c, ts)| (n, c.with_jet_mode(mode), ts)).collect())
}

fn curves_suite(cfg: &BatteryConfig) -> Vec<VerificationReport> {
    let scale = cfg.jet_scale();
    let mut reports = Vec::new();
    let tol = 1e-5 * scale;
    reports.push(settle(
        "numeric_vs_closed_form_plane",
        tol,
        Ok(VerificationReport::combine(
            "",
            tol,
            [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 2.0]
                .iter()
                .map(|&th| verify_numeric_vs_closed_form_with(BuiltinSurface::Plane, 1.0, th, 50, cfg.jets, scale))
                .collect(),
        )),
    ));
    let mut sphere_parts = Vec::new();
    for radius in [1.0, 2.0] {
        for a in [0.5, 1.0, 2.0] {
            let theta = (1.0f64 / a).atan();
            sphere_parts.push(verify_numeric_vs_closed_form_with(
                BuiltinSurface::Sphere,
                radius,
                theta,
                50,
                cfg.jets,
                scale,
            ));
        }
    }
    reports.push(VerificationReport::combine("numeric_vs_closed_form_sphere", tol, sphere_parts));
    reports.push(VerificationReport::combine(
        "numeric_vs_closed_form_pseudosphere",
        tol,
        [(1.0, FRAC_PI_6), (2.0, FRAC_PI_3), (0.5, 2.5)]
            .iter()
            .map(|&(r, th)| {
                verify_numeric_vs_closed_form_with(BuiltinSurface::Pseudosphere, r, th, 50, cfg.jets, scale)
            })
            .collect(),
    ));

    match curve_families(cfg.jets) {
        Ok(families) => {
            let mut angles = Vec::new();
            let mut covariance = Vec::new();
            let mut additivity = Vec::new();
            let mut failure = None;
            for (_, curve, ts) in families.iter().take(3) {
                let first = angle_to_parallel(curve, ts[0]);
                for &t in ts {
                    match (first.as_ref(), angle_to_parallel(curve, t)) {
                        (Ok(&a0), Ok(a)) => angles.push(Observation::absolute(vec![t], a0, a)),
                        (Err(e), _) => failure = Some(e.clone()),
                        (_, Err(e)) => failure = Some(e),
                    }
                }
            }
            for (_, curve, ts) in &families {
                for &t in ts.iter().skip(1).step_by(3) {
                    let k = geodesic_curvature_numeric(curve, t);
                    let rev = geodesic_curvature_numeric(&curve.reversed(), t);
                    let flip = geodesic_curvature_numeric(
                        &curve.with_surface_orientation(curve.patch().orientation().flipped()),
                        t,
                    );
                    match (k, rev, flip) {
                        (Ok(k), Ok(rev), Ok(flip)) => {
                            covariance.push(Observation::absolute(vec![t, 0.0], -k, rev));
                            covariance.push(Observation::absolute(vec![t, 1.0], -k, flip));
                        }
                        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => failure = Some(e),
                    }
                }
                let (t0, t2) = (ts[0], ts[ts.len() - 1]);
                let t1 = 0.5 * (t0 + t2) + 0.1 * (t2 - t0);
                let whole = arc_length(curve, t0, t2);
                let parts = arc_length(curve, t0, t1).and_then(|a| arc_length(curve, t1, t2).map(|b| a + b));
                match (whole, parts) {
                    (Ok(w), Ok(p)) => additivity.push(Observation::relative(vec![t0, t1, t2], w, p)),
                    (Err(e), _) | (_, Err(e)) => failure = Some(e),
                }
            }
            let finish = |name: &str, tol: f64, obs: Vec<Observation>| match &failure {
                Some(e) => VerificationReport::errored(name, tol, e),
                None => VerificationReport::new(name, tol, obs),
            };
            reports.push(finish("constant_angle", 1e-7 * scale, angles));
            reports.push(finish("orientation_covariance", 1e-9 * scale, covariance));
            reports.push(finish("arc_length_additivity", 1e-10 * cfg.tol_scale, additivity));
        }
        Err(err) => reports.push(VerificationReport::errored("curve_families", 0.0, &err)),
    }

    // Polar spirals placed on the plane and sphere keep their angle.
    let polar = (|| -> Result<VerificationReport> {
        let mut obs = Vec::new();
        for (patch, k) in [(SurfacePatch::plane(), 0.0), (SurfacePatch::sphere(2.0)?, 0.25)] {
            let theta = 1.1;
            let spiral = PolarSpiral::new(k, theta, 1.0, 0.4)?;
            let curve = crate::polar::embed_polar_trace(&patch.with_jet_mode(cfg.jets), &spiral)?;
            for i in 1..=50 {
                let r = 0.06 * i as f64;
                obs.push(Observation::absolute(vec![k, r], -theta, angle_to_parallel(&curve, r)?));
            }
        }
        Ok(VerificationReport::new("", 1e-7 * scale, obs))
    })();
    reports.push(settle("polar_constant_angle", 1e-7 * scale, polar));
    reports
}

fn liouville_suite(cfg: &BatteryConfig) -> Vec<VerificationReport> {
    let scale = cfg.jet_scale();
    let families = match curve_families(cfg.jets) {
        Ok(f) => f,
        Err(err) => return vec![VerificationReport::errored("liouville_residual", 1e-5 * scale, &err)],
    };
    let mut residuals = Vec::new();
    let mut meridian_k2 = Vec::new();
    let mut angle_rates = Vec::new();
    for (index, (name, curve, ts)) in families.iter().enumerate() {
        for &t in ts {
            let b = match liouville_breakdown(curve, t) {
                Ok(b) => b,
                Err(err) => return vec![VerificationReport::errored("liouville_residual", 1e-5 * scale, &err)],
            };
            let input = vec![index as f64, t];
            residuals.push(Observation::absolute(input.clone(), b.k_direct, b.k_liouville));
            if name.ends_with("meridian") || name.ends_with("ray") {
                meridian_k2.push(Observation::absolute(input.clone(), 0.0, b.k2));
            }
            if index < 3 {
                angle_rates.push(Observation::absolute(input, 0.0, b.dtheta_ds));
            }
        }
    }
    vec![
        VerificationReport::new("liouville_residual", 1e-5 * scale, residuals),
        VerificationReport::new("meridian_geodesic", 1e-8 * scale, meridian_k2),
        VerificationReport::new("spiral_angle_rate", 1e-7 * scale, angle_rates),
    ]
}

/// `count` points of `(t, r)` for the monotonicity check: `r` from `rs`,
/// `t` spread over `[-10/r², 0.99 (π/r)²]` and always including `t = 0`.
pub fn monotone_grid(r: f64, count: usize) -> Vec<f64> {
    let lo = -10.0 / (r * r);
    let hi = 0.99 * (PI / r).powi(2);
    let mut grid: Vec<f64> = (0..count - 1).map(|i| lo + (hi - lo) * i as f64 / (count - 2) as f64).collect();
    grid.push(0.0);
    grid
}

fn analysis_suite(cfg: &BatteryConfig) -> Vec<VerificationReport> {
    let s = cfg.tol_scale;
    let mut reports = Vec::new();
    let rs = [1e-1, 1e-2, 1e-3, 1e-4];
    reports.push(VerificationReport::combine(
        "ratio_limit",
        1.5 * s,
        vec![
            verify_ratio_limit(4.0, -4.0, FRAC_PI_4, &rs),
            verify_ratio_limit(1.0, 0.0, FRAC_PI_3, &rs),
            verify_ratio_limit(1.0, 1.0, FRAC_PI_3, &rs),
        ],
    ));
    reports.push(settle("ratio_convergence_rate", 0.1 * s, verify_ratio_convergence_rate(1.0, 0.0, FRAC_PI_4, &rs)));
    let mut derivative_parts = Vec::new();
    for r in [0.5, 1.0, 3.0] {
        for theta in [FRAC_PI_6, FRAC_PI_3, 3.0 * FRAC_PI_4, FRAC_PI_2] {
            derivative_parts.push(verify_derivative_at_zero(r, theta, &default_h_sequence(r)));
        }
    }
    reports.push(VerificationReport::combine("derivative_at_zero", 1e-8 * s, derivative_parts));
    reports.push(VerificationReport::combine(
        "f_monotone",
        0.0,
        [0.5, 1.0, 2.0].iter().map(|&r| verify_f_monotone(r, &monotone_grid(r, 1000))).collect(),
    ));
    let thetas = [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2, 2.0 * FRAC_PI_3];
    reports.push(VerificationReport::combine(
        "sign_theorem",
        0.0,
        [-4.0, 0.0, 4.0].iter().map(|&k| verify_sign_theorem(k, &thetas, 1e-2)).collect(),
    ));
    reports.push(settle("seam_agreement", 1e-12 * s, verify_seam_agreement(FRAC_PI_3, 21)));
    reports.push(settle("seam_continuity", 1e-12 * s, verify_seam_continuity(FRAC_PI_3)));
    reports.push(VerificationReport::combine(
        "jacobi_residual",
        1e-6 * s,
        [-4.0, -1.0, 0.0, 1.0, 4.0].iter().map(|&k| verify_jacobi_residual(k, 100)).collect(),
    ));
    reports.push(VerificationReport::combine(
        "polar_limits",
        1e-6 * s,
        [-4.0, -1.0, 0.0, 1.0, 4.0].iter().map(|&k| Ok(verify_polar_limits(k))).collect(),
    ));
    let consistency = (|| -> Result<VerificationReport> {
        let mut obs = Vec::new();
        for k in [-4.0, -1.0, -1e-6, 0.0, 1e-6, 1.0, 4.0] {
            let limit = closed_form::max_radius(k).min(5.0);
            for i in 1..50 {
                let r = limit * i as f64 / 50.0;
                let a = circle_curvature(k, r)?;
                let b = closed_form::f(k, r)?;
                // Relative to the larger of |f| and 1/r so the zero of f for K > 0 is measured sensibly.
                obs.push(Observation::new(vec![k, r], b, a, (a - b).abs() / b.abs().max(1.0 / r)));
            }
        }
        Ok(VerificationReport::new("", 1e-13 * s, obs))
    })();
    reports.push(settle("circle_curvature_consistency", 1e-13 * s, consistency));
    let quadrature_check = (|| -> Result<VerificationReport> {
        let mut obs = Vec::new();
        for k in [-4.0, -1.0, 0.0, 1.0, 4.0] {
            let spiral = PolarSpiral::new(k, FRAC_PI_3, 0.2, 0.0)?;
            let hi = closed_form::max_radius(k).min(3.0) * 0.9;
            for r in [0.05, 0.5 * hi, hi] {
                let closed = spiral.point(r)?.u;
                let metric = spiral.metric;
                let quad = spiral.cot_theta() * quadrature::integrate(|x| Ok(1.0 / metric.sqrt_g(x)), 0.2, r, 1e-13)?;
                obs.push(Observation::new(vec![k, r], quad, closed, (closed - quad).abs() / quad.abs().max(1.0)));
            }
        }
        Ok(VerificationReport::new("", 1e-10 * s, obs))
    })();
    reports.push(settle("polar_quadrature_consistency", 1e-10 * s, quadrature_check));
    reports
}

/// Runs the selected suites in a fixed order.
pub fn run_battery(suite: Suite, cfg: &BatteryConfig) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    if suite.includes(Suite::Forms) {
        reports.extend(forms_suite(cfg));
    }
    if suite.includes(Suite::Curves) {
        reports.extend(curves_suite(cfg));
    }
    if suite.includes(Suite::Liouville) {
        reports.extend(liouville_suite(cfg));
    }
    if suite.includes(Suite::Analysis) {
        reports.extend(analysis_suite(cfg));
    }
    reports
}
