//! Geodesic polar coordinates `(r, u)` on a surface of constant curvature `K`,
//! where the metric is `dr² + G(r) du²` and `√G` solves
//! `(√G)'' + K √G = 0` with `√G(0) = 0`, `(√G)'(0) = 1`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::closed_form::{cos_angle, max_radius, SEAM_THRESHOLD};
use crate::curves::{ChartCurve, ChartTrace, Direction};
use crate::error::{GeomError, Result};
use crate::surface::{Interval, SurfaceKind, SurfacePatch};

/// Smallest accepted characteristic angle; `π - MIN_ANGLE` is the largest.
pub const MIN_ANGLE: f64 = 1e-3;

/// Below this `|K| r² / 4` the log-tangent ratio is summed as a series.
const LOG_TAN_SERIES_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarMetric {
    pub k: f64,
}

pub fn polar_metric(k: f64) -> PolarMetric {
    PolarMetric { k }
}

impl PolarMetric {
    fn z(&self, r: f64) -> f64 {
        self.k * r * r
    }

    /// `√G(r)`: `sin(r√K)/√K`, `r` or `sinh(r√-K)/√-K`.
    pub fn sqrt_g(&self, r: f64) -> f64 {
        let z = self.z(r);
        if z.abs() < SEAM_THRESHOLD {
            r * (1.0 + z * (-1.0 / 6.0 + z * (1.0 / 120.0 + z * (-1.0 / 5040.0 + z / 362_880.0))))
        } else if self.k > 0.0 {
            let s = self.k.sqrt();
            (r * s).sin() / s
        } else {
            let s = (-self.k).sqrt();
            (r * s).sinh() / s
        }
    }

    /// `(√G)'(r)`: `cos(r√K)`, `1` or `cosh(r√-K)`.
    pub fn sqrt_g_r(&self, r: f64) -> f64 {
        let z = self.z(r);
        if z.abs() < SEAM_THRESHOLD {
            1.0 + z * (-0.5 + z * (1.0 / 24.0 + z * (-1.0 / 720.0 + z / 40_320.0)))
        } else if self.k > 0.0 {
            (r * self.k.sqrt()).cos()
        } else {
            (r * (-self.k).sqrt()).cosh()
        }
    }

    /// `G(r)`.
    pub fn g(&self, r: f64) -> f64 {
        let s = self.sqrt_g(r);
        s * s
    }

    /// Radii `0 < r < π/√K` (any `r > 0` when `K ≤ 0`).
    pub fn check_radius(&self, r: f64) -> Result<()> {
        if !self.k.is_finite() {
            return Err(GeomError::Domain(format!("Gaussian curvature K = {} must be finite", self.k)));
        }
        let limit = max_radius(self.k);
        if r > 0.0 && r.is_finite() && r < limit {
            Ok(())
        } else {
            Err(GeomError::Domain(format!("distance r = {r} must lie in (0, {limit})")))
        }
    }
}

/// Geodesic curvature `G_r / (2G) = (√G)_r / √G` of the positively oriented
/// geodesic circle of radius `r`.
pub fn circle_curvature(k: f64, r: f64) -> Result<f64> {
    let metric = polar_metric(k);
    metric.check_radius(r)?;
    Ok(metric.sqrt_g_r(r) / metric.sqrt_g(r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarTracePoint {
    pub r: f64,
    pub u: f64,
}

/// `ln(tan x / x)` for `x² = w > 0`, `ln(tanh x / x)` for `x² = -w`.
fn log_tan_ratio(w: f64) -> f64 {
    if w.abs() < LOG_TAN_SERIES_LIMIT {
        w * (1.0 / 3.0 + w * (7.0 / 90.0 + w * (62.0 / 2835.0 + w * 127.0 / 18_900.0)))
    } else if w > 0.0 {
        let x = w.sqrt();
        (x.tan() / x).ln()
    } else {
        let x = (-w).sqrt();
        (x.tanh() / x).ln()
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if (MIN_ANGLE..=PI - MIN_ANGLE).contains(&theta) {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("characteristic angle θ = {theta} must lie in [{MIN_ANGLE}, π - {MIN_ANGLE}]")))
    }
}

/// A spiral `u(r) = u0 + cot θ ∫_{r0}^{r} ds / √G(s)` about the pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarSpiral {
    pub metric: PolarMetric,
    pub theta: f64,
    pub r0: f64,
    pub u0: f64,
}

impl PolarSpiral {
    pub fn new(k: f64, theta: f64, r0: f64, u0: f64) -> Result<Self> {
        check_angle(theta)?;
        let metric = polar_metric(k);
        metric.check_radius(r0)?;
        if !u0.is_finite() {
            return Err(GeomError::Domain(format!("u0 = {u0} must be finite")));
        }
        Ok(PolarSpiral { metric, theta, r0, u0 })
    }

    pub fn cot_theta(&self) -> f64 {
        cos_angle(self.theta) / self.theta.sin()
    }

    /// `∫_{r0}^{r} ds/√G`. Written as `ln(r/r0)` plus the difference of
    /// `ln(tan x/x)` (or `tanh`) terms so that small `|K|` loses nothing.
    pub fn polar_angle_integral(&self, r: f64) -> Result<f64> {
        self.metric.check_radius(r)?;
        let k = self.metric.k;
        let w = |s: f64| 0.25 * k * s * s;
        Ok((r / self.r0).ln() + log_tan_ratio(w(r)) - log_tan_ratio(w(self.r0)))
    }

    pub fn point(&self, r: f64) -> Result<PolarTracePoint> {
        let integral = self.polar_angle_integral(r)?;
        Ok(PolarTracePoint { r, u: self.u0 + self.cot_theta() * integral })
    }

    /// `du/dr = cot θ / √G(r)`.
    pub fn slope(&self, r: f64) -> f64 {
        self.cot_theta() / self.metric.sqrt_g(r)
    }

    pub fn points(&self, radii: &[f64]) -> Result<Vec<PolarTracePoint>> {
        radii.iter().map(|&r| self.point(r)).collect()
    }
}

pub fn spiral_chart_trace(k: f64, theta: f64, r0: f64, u0: f64, r: f64) -> Result<PolarTracePoint> {
    PolarSpiral::new(k, theta, r0, u0)?.point(r)
}

/// Chart trace of a polar spiral on the plane or sphere, parametrized by `r`.
#[derive(Debug, Clone, Copy)]
struct EmbeddedSpiral {
    spiral: PolarSpiral,
    // v = r / scale
    scale: f64,
}

impl ChartTrace for EmbeddedSpiral {
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        let p = self.spiral.point(t)?;
        Ok((p.u, t / self.scale))
    }

    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.spiral.slope(t), 1.0 / self.scale))
    }
}

/// Places a polar spiral on a built-in plane or sphere, using the origin or
/// the north pole as center. The curve is parametrized by `r` and traversed
/// outward.
pub fn embed_polar_trace(patch: &SurfacePatch, spiral: &PolarSpiral) -> Result<ChartCurve> {
    let (scale, k) = match patch.kind() {
        SurfaceKind::Plane => (1.0, 0.0),
        SurfaceKind::Sphere { radius } => (radius, 1.0 / (radius * radius)),
        SurfaceKind::Pseudosphere { .. } => {
            return Err(GeomError::Unsupported("polar spirals cannot be placed on the pseudosphere chart".into()))
        }
        SurfaceKind::Revolution => {
            return Err(GeomError::Unsupported("polar spirals need a plane or sphere patch".into()))
        }
    };
    let mismatch = (spiral.metric.k - k).abs();
    if mismatch > 1e-12 * k.abs().max(f64::MIN_POSITIVE) && mismatch > 0.0 {
        return Err(GeomError::BadParameter(format!(
            "spiral curvature K = {} does not match the surface's K = {k}",
            spiral.metric.k
        )));
    }
    let trace = EmbeddedSpiral { spiral: *spiral, scale };
    ChartCurve::new(patch.clone(), Arc::new(trace), Interval::open(0.0, max_radius(k)), Direction::Forward)
}

/// Embeds `points` (all on one spiral) by fitting the spiral through them:
/// the first point fixes `(r0, u0)`.
pub fn embed_polar_points(patch: &SurfacePatch, k: f64, theta: f64, points: &[PolarTracePoint]) -> Result<ChartCurve> {
    let first = points.first().ok_or_else(|| GeomError::BadParameter("no trace points given".into()))?;
    let spiral = PolarSpiral::new(k, theta, first.r, first.u)?;
    for p in &points[1..] {
        let expected = spiral.point(p.r)?.u;
        if (expected - p.u).abs() > 1e-9 * expected.abs().max(1.0) {
            return Err(GeomError::BadParameter(format!(
                "point (r = {}, u = {}) is not on the spiral (expected u = {expected})",
                p.r, p.u
            )));
        }
    }
    embed_polar_trace(patch, &spiral)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::closed_form;
    use crate::curves::{angle_to_parallel, plane_log_spiral, sphere_loxodrome};
    use crate::vec3::Vec3;
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn metric_examples() {
        // sinh²(1) from the 256-bit oracle.
        assert!((polar_metric(-1.0).g(1.0) - 1.381097845541815729781107).abs() < 1e-15);
        assert_eq!(polar_metric(0.0).sqrt_g(2.0), 2.0);
        assert_eq!(polar_metric(1.0).sqrt_g(FRAC_PI_2), 1.0);
    }

    #[test]
    fn circle_curvature_examples() {
        assert!((circle_curvature(0.0, 0.8).unwrap() - 1.25).abs() < 1e-15);
        // coth(1) from the oracle.
        let k = circle_curvature(-0.25, 2.0).unwrap();
        assert!((k - 0.5 * 1.313035285499331303636161).abs() < 1e-15);
        let k = circle_curvature(0.25, 1.0).unwrap();
        assert!((k - 0.5 / (0.5f64).tan()).abs() < 1e-15);
        assert!(circle_curvature(1.0, PI).is_err());
        assert!(circle_curvature(1.0, 0.0).is_err());
    }

    #[test]
    fn circle_curvature_matches_closed_form() {
        for &k in &[-9.0, -1.0, -1e-3, -1e-7, 0.0, 1e-7, 1e-3, 1.0, 9.0] {
            let limit = max_radius(k).min(20.0);
            for i in 1..200 {
                let r = limit * i as f64 / 200.0;
                let a = circle_curvature(k, r).unwrap();
                let b = closed_form::f(k, r).unwrap();
                // Near the zero at r√K = π/2 only absolute agreement is meaningful.
                let scale = a.abs().max(0.1 / r);
                assert!((a - b).abs() <= 1e-13 * scale, "K={k} r={r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn flat_spiral_example() {
        let p = spiral_chart_trace(0.0, FRAC_PI_4, 1.0, 0.0, E).unwrap();
        assert!((p.u - 1.0).abs() < 1e-15);
    }

    #[test]
    fn radial_spiral_is_constant() {
        for k in [-2.0, 0.0, 0.5] {
            let s = PolarSpiral::new(k, FRAC_PI_2, 0.5, 0.3).unwrap();
            for r in [0.1, 0.7, 2.0] {
                assert_eq!(s.point(r).unwrap().u, 0.3);
            }
        }
    }

    #[test]
    fn angle_range_is_enforced() {
        assert!(PolarSpiral::new(0.0, 5e-4, 1.0, 0.0).is_err());
        assert!(PolarSpiral::new(0.0, PI - 5e-4, 1.0, 0.0).is_err());
        assert!(PolarSpiral::new(1.0, 1.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn integral_matches_quadrature() {
        for k in [-4.0, -1e-6, 0.0, 1e-6, 1.0, 4.0] {
            let s = PolarSpiral::new(k, FRAC_PI_3, 0.2, 0.0).unwrap();
            let hi = max_radius(k).min(3.0) * 0.9;
            for r in [0.05, 0.5 * hi, hi] {
                let closed = s.polar_angle_integral(r).unwrap();
                let quad = crate::quadrature::integrate(|x| Ok(1.0 / s.metric.sqrt_g(x)), 0.2, r, 1e-13).unwrap();
                assert!((closed - quad).abs() < 1e-10 * quad.abs().max(1.0), "K={k} r={r}");
            }
        }
    }

    #[test]
    fn sphere_trace_is_the_loxodrome() {
        // cot θ = 1, R = 1, started where ln tan(r/2) vanishes.
        let s = PolarSpiral::new(1.0, FRAC_PI_4, FRAC_PI_2, 0.0).unwrap();
        let curve = embed_polar_trace(&SurfacePatch::sphere(1.0).unwrap(), &s).unwrap();
        let lox = sphere_loxodrome(1.0, 1.0).unwrap();
        for t in [0.05, 0.3, 0.8, 1.4] {
            let d = curve.position(2.0 * t).unwrap().distance(lox.position(t).unwrap());
            assert!(d < 1e-12, "t={t}: {d}");
        }
    }

    #[test]
    fn plane_trace_is_mirrored_spiral() {
        let s = PolarSpiral::new(0.0, FRAC_PI_4, 1.0, 0.0).unwrap();
        let curve = embed_polar_trace(&SurfacePatch::plane(), &s).unwrap();
        let spiral = plane_log_spiral(1.0).unwrap();
        for t in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            let p = spiral.position(t).unwrap();
            let mirrored = Vec3::new(p.x, -p.y, p.z);
            let q = curve.position(p.norm()).unwrap();
            assert!(q.distance(mirrored) < 1e-12);
        }
    }

    #[test]
    fn embedded_traces_keep_constant_angle() {
        for (patch, k) in [(SurfacePatch::plane(), 0.0), (SurfacePatch::sphere(2.0).unwrap(), 0.25)] {
            let theta = 1.1;
            let s = PolarSpiral::new(k, theta, 1.0, 0.4).unwrap();
            let curve = embed_polar_trace(&patch, &s).unwrap();
            for i in 1..=50 {
                let r = 0.06 * i as f64;
                let measured = angle_to_parallel(&curve, r).unwrap();
                // Traversed outward the tangent lies clockwise of the parallel.
                assert!((measured + theta).abs() < 1e-7, "r={r}: {measured}");
            }
        }
    }

    #[test]
    fn pseudosphere_is_unsupported() {
        let s = PolarSpiral::new(-1.0, 1.0, 1.0, 0.0).unwrap();
        let patch = SurfacePatch::pseudosphere(1.0).unwrap();
        assert!(matches!(embed_polar_trace(&patch, &s), Err(GeomError::Unsupported(_))));
        let s = PolarSpiral::new(-1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(embed_polar_trace(&SurfacePatch::plane(), &s), Err(GeomError::BadParameter(_))));
    }

    #[test]
    fn points_round_trip() {
        let s = PolarSpiral::new(1.0, 0.7, 0.5, 0.1).unwrap();
        let pts = s.points(&[0.5, 1.0, 2.0]).unwrap();
        let c = embed_polar_points(&SurfacePatch::sphere(1.0).unwrap(), 1.0, 0.7, &pts).unwrap();
        assert!((c.chart_point(2.0).unwrap().0 - pts[2].u).abs() < 1e-15);
        let mut bad = pts.clone();
        bad[1].u += 1e-3;
        assert!(embed_polar_points(&SurfacePatch::sphere(1.0).unwrap(), 1.0, 0.7, &bad).is_err());
    }
}
