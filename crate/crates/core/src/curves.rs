//! Curves drawn in the chart of a surface patch, and their intrinsic
//! measurements: arc length, geodesic curvature and angle to the parallels.
//!
//! A curve's orientation is the direction of increasing `t` when
//! `direction` is [`Direction::Forward`] and the reverse otherwise. Geodesic
//! curvature and angles are always reported for the oriented curve and the
//! oriented surface, so reversing either one negates `k`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::closed_form::cos_angle;
use crate::error::{GeomError, Result};
use crate::numdiff::richardson_derivative;
use crate::ode::{self, Solution, Tolerance};
use crate::quadrature;
use crate::surface::{unit_normal, FirstForm, Interval, JetMode, Orientation, SurfaceKind, SurfacePatch};
use crate::vec3::Vec3;

/// Relative tolerance for arc-length quadrature.
pub const ARC_LENGTH_TOL: f64 = 1e-10;

/// Relative tolerance for loxodrome integration.
pub const LOXODROME_ODE_TOL: f64 = 1e-10;

/// Largest accepted estimated relative error of `α''`.
pub const MAX_ACCELERATION_ERROR: f64 = 1e-4;

/// Largest tangent turning angle (radians) across one finite-difference step.
const TURN_PER_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// A map `t ↦ (u(t), v(t))` into a chart, together with its velocity.
pub trait ChartTrace: Send + Sync + fmt::Debug {
    fn point(&self, t: f64) -> Result<(f64, f64)>;

    /// `(u'(t), v'(t))`. Defaults to extrapolated central differences.
    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        let h = 1e-3 * t.abs().max(1.0);
        let du = richardson_derivative(|s| self.point(s).map(|p| p.0), t, h, 3)?.value;
        let dv = richardson_derivative(|s| self.point(s).map(|p| p.1), t, h, 3)?.value;
        Ok((du, dv))
    }
}

/// Trace given by an arbitrary closure; its velocity is numeric.
pub struct FnTrace<F>(pub F);

impl<F> fmt::Debug for FnTrace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnTrace")
    }
}

impl<F> ChartTrace for FnTrace<F>
where
    F: Fn(f64) -> (f64, f64) + Send + Sync,
{
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.0)(t))
    }
}

/// The coordinate curves `γ_v(t) = φ(t, v)` and `γ_u(t) = φ(u, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinateTrace {
    Parallel { v: f64 },
    Meridian { u: f64 },
}

impl ChartTrace for CoordinateTrace {
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok(match *self {
            CoordinateTrace::Parallel { v } => (t, v),
            CoordinateTrace::Meridian { u } => (u, t),
        })
    }

    fn velocity(&self, _t: f64) -> Result<(f64, f64)> {
        Ok(match self {
            CoordinateTrace::Parallel { .. } => (1.0, 0.0),
            CoordinateTrace::Meridian { .. } => (0.0, 1.0),
        })
    }
}

/// `γ(t) = e^{-at}(cos t, sin t)` in the polar chart: `u = t`, `v = e^{-at}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneSpiralTrace {
    pub a: f64,
}

impl ChartTrace for PlaneSpiralTrace {
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok((t, (-self.a * t).exp()))
    }

    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        Ok((1.0, -self.a * (-self.a * t).exp()))
    }
}

/// `γ(t) = φ(a ln tan t, 2t)` on the sphere, `0 < t < π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereLoxodromeTrace {
    pub a: f64,
}

impl ChartTrace for SphereLoxodromeTrace {
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.a * t.tan().ln(), 2.0 * t))
    }

    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        let (s, c) = t.sin_cos();
        Ok((self.a / (s * c), 2.0))
    }
}

/// Loxodrome on a surface of revolution, parametrized by `v` and obtained by
/// integrating `du/dv = cot θ · √(G/E)` from a starting parallel.
#[derive(Clone)]
pub struct LoxodromeTrace {
    patch: SurfacePatch,
    cot_theta: f64,
    solution: Arc<Solution>,
}

impl fmt::Debug for LoxodromeTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoxodromeTrace")
            .field("cot_theta", &self.cot_theta)
            .field("nodes", &self.solution.nodes().len())
            .finish()
    }
}

impl LoxodromeTrace {
    fn slope(patch: &SurfacePatch, cot_theta: f64, v: f64) -> f64 {
        let pj = patch.profile_jet(v);
        // E = x², G = x'² + z'² for the standard parametrization.
        cot_theta * pj.dx.hypot(pj.dz) / pj.x.abs()
    }

    fn rhs(&self) -> impl Fn(f64, f64) -> f64 + '_ {
        move |v, _u| Self::slope(&self.patch, self.cot_theta, v)
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }
}

impl ChartTrace for LoxodromeTrace {
    fn point(&self, t: f64) -> Result<(f64, f64)> {
        let u = self.solution.eval(&self.rhs(), t).map_err(|_| GeomError::OutOfCurveDomain {
            t,
            min: self.solution.start().min(self.solution.end()),
            max: self.solution.start().max(self.solution.end()),
        })?;
        Ok((u, t))
    }

    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        Ok((Self::slope(&self.patch, self.cot_theta, t), 1.0))
    }
}

/// A curve on a surface, given in the surface's chart.
#[derive(Debug, Clone)]
pub struct ChartCurve {
    patch: SurfacePatch,
    trace: Arc<dyn ChartTrace>,
    t_domain: Interval,
    direction: Direction,
}

impl ChartCurve {
    pub fn new(
        patch: SurfacePatch,
        trace: Arc<dyn ChartTrace>,
        t_domain: Interval,
        direction: Direction,
    ) -> Result<Self> {
        if t_domain.is_degenerate() {
            return Err(GeomError::BadParameter("curve parameter interval is empty".into()));
        }
        Ok(ChartCurve { patch, trace, t_domain, direction })
    }

    pub fn patch(&self) -> &SurfacePatch {
        &self.patch
    }

    pub fn trace(&self) -> &Arc<dyn ChartTrace> {
        &self.trace
    }

    pub fn t_domain(&self) -> Interval {
        self.t_domain
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// The same point set traversed the other way.
    pub fn reversed(&self) -> Self {
        ChartCurve { direction: self.direction.flipped(), ..self.clone() }
    }

    /// The same curve on the oppositely oriented surface.
    pub fn with_surface_orientation(&self, orientation: Orientation) -> Self {
        ChartCurve { patch: self.patch.clone().with_orientation(orientation), ..self.clone() }
    }

    pub fn with_jet_mode(&self, mode: JetMode) -> Self {
        ChartCurve { patch: self.patch.clone().with_jet_mode(mode), ..self.clone() }
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if self.t_domain.contains(t) {
            Ok(())
        } else {
            Err(GeomError::OutOfCurveDomain { t, min: self.t_domain.min, max: self.t_domain.max })
        }
    }

    /// Chart coordinates `(u, v)` at `t`.
    pub fn chart_point(&self, t: f64) -> Result<(f64, f64)> {
        self.check_t(t)?;
        self.trace.point(t)
    }

    pub fn position(&self, t: f64) -> Result<Vec3> {
        let (u, v) = self.chart_point(t)?;
        self.patch.position(u, v)
    }

    /// Embedded velocity `dγ/dt` (for increasing `t`, regardless of direction).
    pub fn velocity(&self, t: f64) -> Result<Vec3> {
        let (u, v) = self.chart_point(t)?;
        let (du, dv) = self.trace.velocity(t)?;
        let jet = self.patch.jet(u, v)?;
        Ok(jet.p_u * du + jet.p_v * dv)
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        self.velocity(t).map(Vec3::norm)
    }

    /// Oriented unit tangent and speed at `t`.
    fn unit_tangent(&self, t: f64) -> Result<(Vec3, f64)> {
        let vel = self.velocity(t)?;
        let speed = vel.norm();
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(GeomError::DegenerateJet { cross_norm: speed });
        }
        Ok((vel * (self.direction.sign() / speed), speed))
    }

    /// Distance to the center of the built-in surface's natural geodesic
    /// circles: the origin of the plane or the north pole of the sphere.
    pub fn center_distance(&self, t: f64) -> Result<Option<f64>> {
        let (_, v) = self.chart_point(t)?;
        Ok(match self.patch.kind() {
            SurfaceKind::Plane => Some(v),
            SurfaceKind::Sphere { radius } => Some(radius * v),
            _ => None,
        })
    }
}

/// `γ(t) = e^{-at}(cos t, sin t)` in the plane; its characteristic angle is
/// `arctan a`. For `a > 0` the curve winds counterclockwise into the origin.
pub fn plane_log_spiral(a: f64) -> Result<ChartCurve> {
    if a == 0.0 || !a.is_finite() {
        return Err(GeomError::BadParameter(format!("spiral rate a must be finite and nonzero, got {a}")));
    }
    ChartCurve::new(SurfacePatch::plane(), Arc::new(PlaneSpiralTrace { a }), Interval::real_line(), Direction::Forward)
}

/// `γ(t) = φ(a ln tan t, 2t)` on the sphere of radius `R`, `0 < t < π/2`.
/// The angle it makes with the parallels has magnitude `arccot a`.
pub fn sphere_loxodrome(radius: f64, a: f64) -> Result<ChartCurve> {
    if a == 0.0 || !a.is_finite() {
        return Err(GeomError::BadParameter(format!("loxodrome rate a must be finite and nonzero, got {a}")));
    }
    ChartCurve::new(
        SurfacePatch::sphere(radius)?,
        Arc::new(SphereLoxodromeTrace { a }),
        Interval::open(0.0, FRAC_PI_2),
        Direction::Forward,
    )
}

/// Loxodrome crossing the parallels of a surface of revolution at signed angle
/// `θ`, through `(u0, v_start)`, traced for `v` between `v_start` and `v_end`.
/// The curve is parametrized by `v` and oriented so that `v` increases.
pub fn loxodrome_on_revolution(
    patch: SurfacePatch,
    theta: f64,
    u0: f64,
    v_start: f64,
    v_end: f64,
) -> Result<ChartCurve> {
    if !(theta > 0.0 && theta < PI) {
        return Err(GeomError::BadParameter(format!("loxodrome angle θ = {theta} must lie in (0, π)")));
    }
    let v_dom = patch.domain().v;
    for v in [v_start, v_end] {
        if !v_dom.contains(v) {
            return Err(GeomError::OutOfDomain { u: u0, v });
        }
    }
    let cot_theta = cos_angle(theta) / theta.sin();
    let rhs = |v: f64, _u: f64| LoxodromeTrace::slope(&patch, cot_theta, v);
    let solution = ode::integrate(&rhs, v_start, u0, v_end, Tolerance { rel: LOXODROME_ODE_TOL, abs: 1e-14 })?;
    let (lo, hi) = (v_start.min(v_end), v_start.max(v_end));
    let trace = LoxodromeTrace { patch: patch.clone(), cot_theta, solution: Arc::new(solution) };
    ChartCurve::new(patch, Arc::new(trace), Interval::closed(lo, hi), Direction::Forward)
}

/// Loxodrome on the pseudosphere of radius `R` meeting the parallels at signed
/// angle `θ`, integrated from the rim `v = π/2` (where `u = u0`) down to the
/// patch's `v` floor.
pub fn pseudosphere_loxodrome(radius: f64, theta: f64, u0: f64) -> Result<ChartCurve> {
    let patch = SurfacePatch::pseudosphere(radius)?;
    let floor = patch.domain().v.min;
    loxodrome_on_revolution(patch, theta, u0, FRAC_PI_2, floor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateCurveKind {
    Parallel,
    Meridian,
}

/// Parallel (`v` fixed, `t = u`) or meridian (`u` fixed, `t = v`).
pub fn coordinate_curve(patch: &SurfacePatch, which: CoordinateCurveKind, fixed: f64) -> Result<ChartCurve> {
    let domain = *patch.domain();
    let (trace, t_domain) = match which {
        CoordinateCurveKind::Parallel => {
            if !domain.v.contains(fixed) {
                return Err(GeomError::OutOfDomain { u: f64::NAN, v: fixed });
            }
            (CoordinateTrace::Parallel { v: fixed }, domain.u)
        }
        CoordinateCurveKind::Meridian => {
            if !domain.u.contains(fixed) {
                return Err(GeomError::OutOfDomain { u: fixed, v: f64::NAN });
            }
            (CoordinateTrace::Meridian { u: fixed }, domain.v)
        }
    };
    ChartCurve::new(patch.clone(), Arc::new(trace), t_domain, Direction::Forward)
}

/// `∫_{t0}^{t1} |γ'(t)| dt`, antisymmetric in its limits.
pub fn arc_length(curve: &ChartCurve, t0: f64, t1: f64) -> Result<f64> {
    let dom = curve.t_domain();
    for t in [t0, t1] {
        if !dom.closure_contains(t) {
            return Err(GeomError::OutOfCurveDomain { t, min: dom.min, max: dom.max });
        }
    }
    quadrature::integrate(|t| curve.speed(t), t0, t1, ARC_LENGTH_TOL)
}

/// Geodesic curvature `k = ⟨α'', N × α'⟩` of the oriented curve at `t`, with
/// `α` the unit-speed reparametrization. `α''` is obtained by differentiating
/// the unit tangent with extrapolated central differences and dividing by
/// `ds/dt`.
pub fn geodesic_curvature_numeric(curve: &ChartCurve, t: f64) -> Result<f64> {
    let (tangent, speed) = curve.unit_tangent(t)?;
    let (u, v) = curve.chart_point(t)?;
    let jet = curve.patch().jet(u, v)?;
    let normal = unit_normal(&jet, curve.patch().orientation())?;

    let dom = curve.t_domain();
    let room = 0.45 * dom.distance_to_edge(t);
    if !(room > 0.0) {
        return Err(GeomError::OutOfCurveDomain { t, min: dom.min, max: dom.max });
    }
    let scale = t.abs().max(1.0);
    // Coarse turning rate of the tangent picks a step that keeps the stencil
    // within a small turning angle.
    let probe = (1e-4 * scale).min(room);
    let turn_rate = (curve.unit_tangent(t + probe)?.0 - curve.unit_tangent(t - probe)?.0).norm() / (2.0 * probe);
    let mut h = (1e-2 * scale).min(room);
    if turn_rate > 0.0 {
        h = h.min(TURN_PER_STEP / turn_rate);
    }
    let estimate = richardson_derivative(|s| curve.unit_tangent(s).map(|x| x.0), t, h, 2)?;
    let dt_dt = estimate.value;
    // Absolute noise in the unit tangent: differenced jets carry roughly
    // ε^(2/3) relative error in the first partials.
    let noise = match curve.patch().jet_mode() {
        JetMode::Analytic => 1e-9,
        JetMode::FiniteDifference => 1e-7,
    };
    let floor = noise / h;
    if estimate.error > MAX_ACCELERATION_ERROR * dt_dt.norm().max(floor) {
        return Err(GeomError::NumericalBreakdown(format!(
            "tangent derivative error {:e} too large relative to {:e} at t = {t}",
            estimate.error,
            dt_dt.norm()
        )));
    }
    let ds_dt = curve.direction().sign() * speed;
    let accel = dt_dt / ds_dt;
    Ok(accel.dot(normal.cross(tangent)))
}

/// Signed angle in `(-π, π]` from the parallel direction `φ_u` to the oriented
/// tangent, positive when `⟨N, φ_u × γ'⟩ > 0`. Computed from first-form inner
/// products in the chart.
pub fn angle_to_parallel(curve: &ChartCurve, t: f64) -> Result<f64> {
    let (u, v) = curve.chart_point(t)?;
    let (du, dv) = curve.trace().velocity(t)?;
    let jet = curve.patch().jet(u, v)?;
    let form = FirstForm::from_jet(&jet);
    let area = form.determinant();
    if !(form.e > 0.0 && area > 0.0) {
        return Err(GeomError::DegenerateJet { cross_norm: area.max(0.0).sqrt() });
    }
    let dir = curve.direction().sign();
    let (du, dv) = (dir * du, dir * dv);
    if du == 0.0 && dv == 0.0 {
        return Err(GeomError::DegenerateJet { cross_norm: 0.0 });
    }
    let cos_part = form.inner((1.0, 0.0), (du, dv));
    let sin_part = curve.patch().orientation().sign() * dv * area.sqrt();
    let theta = sin_part.atan2(cos_part);
    Ok(if theta == -PI { PI } else { theta })
}

/// Everything measured at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub position: Vec3,
    pub u: f64,
    pub v: f64,
    pub k: f64,
    pub theta: f64,
    pub r: Option<f64>,
}

pub fn sample(curve: &ChartCurve, t: f64) -> Result<CurveSample> {
    let (u, v) = curve.chart_point(t)?;
    Ok(CurveSample {
        t,
        position: curve.position(t)?,
        u,
        v,
        k: geodesic_curvature_numeric(curve, t)?,
        theta: angle_to_parallel(curve, t)?,
        r: curve.center_distance(t)?,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn spiral_starts_on_unit_circle() {
        let c = plane_log_spiral(1.0).unwrap();
        assert_eq!(c.position(0.0).unwrap(), Vec3::new(1.0, 0.0, 0.0));
        let p = c.position(2f64.ln()).unwrap();
        assert!((p.norm() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn zero_rate_is_rejected() {
        assert!(matches!(plane_log_spiral(0.0), Err(GeomError::BadParameter(_))));
        assert!(matches!(sphere_loxodrome(1.0, 0.0), Err(GeomError::BadParameter(_))));
    }

    #[test]
    fn spiral_angle_is_arctan_a() {
        let c = plane_log_spiral(1.0).unwrap();
        for t in [-1.0, 0.0, 0.7, 3.0] {
            let theta = angle_to_parallel(&c, t).unwrap();
            assert!((theta - FRAC_PI_4).abs() < 1e-15);
            assert!((theta.sin() - 0.5f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn loxodrome_crosses_equator_at_quarter_parameter() {
        let c = sphere_loxodrome(1.0, 1.0).unwrap();
        let (u, v) = c.chart_point(FRAC_PI_4).unwrap();
        assert!(u.abs() < 1e-15);
        assert_eq!(v, FRAC_PI_2);
        assert!(c.position(0.0).is_err());
        assert!(c.position(FRAC_PI_2).is_err());
    }

    #[test]
    fn loxodrome_speed_is_constant() {
        for (r, a) in [(1.0, 1.0), (2.0, 0.5), (0.3, -2.0)] {
            let c = sphere_loxodrome(r, a).unwrap();
            let expected = 2.0 * r * (1.0f64 + a * a).sqrt();
            for t in [0.1, 0.5, 1.2] {
                assert!((c.speed(t).unwrap() - expected).abs() < 1e-13 * expected);
            }
        }
    }

    #[test]
    fn loxodrome_angle_magnitude_is_arccot_a() {
        // Against the outward normal the tangent turns clockwise from the
        // parallel, so the signed angle is -arccot a.
        let c = sphere_loxodrome(1.0, 1.0).unwrap();
        for t in [0.2, 0.6, 1.3] {
            let theta = angle_to_parallel(&c, t).unwrap();
            assert!((theta + FRAC_PI_4).abs() < 1e-14, "{theta}");
            assert!((theta.abs().sin() - 0.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn parallel_against_itself_has_zero_angle() {
        let sphere = SurfacePatch::sphere(1.5).unwrap();
        let par = coordinate_curve(&sphere, CoordinateCurveKind::Parallel, 0.8).unwrap();
        assert_eq!(angle_to_parallel(&par, 0.3).unwrap(), 0.0);
        assert_eq!(angle_to_parallel(&par.reversed(), 0.3).unwrap(), PI);
    }

    #[test]
    fn coordinate_curve_examples() {
        let sphere = SurfacePatch::sphere(1.0).unwrap();
        let eq = coordinate_curve(&sphere, CoordinateCurveKind::Parallel, FRAC_PI_2).unwrap();
        for t in [0.0, 1.0, 4.0] {
            let p = eq.position(t).unwrap();
            assert!(p.z.abs() < 1e-15 && (p.norm() - 1.0).abs() < 1e-15);
        }
        let ray = coordinate_curve(&SurfacePatch::plane(), CoordinateCurveKind::Meridian, 0.0).unwrap();
        assert_eq!(ray.position(2.5).unwrap(), Vec3::new(2.5, 0.0, 0.0));
        let pseudo = SurfacePatch::pseudosphere(3.0).unwrap();
        let rim = coordinate_curve(&pseudo, CoordinateCurveKind::Parallel, FRAC_PI_2).unwrap();
        let p = rim.position(1.0).unwrap();
        assert!((p.norm() - 3.0).abs() < 1e-14 && p.z.abs() < 1e-14);
        assert!(coordinate_curve(&pseudo, CoordinateCurveKind::Parallel, 1e-4).is_err());
        assert!(coordinate_curve(&sphere, CoordinateCurveKind::Parallel, 4.0).is_err());
    }

    #[test]
    fn arc_length_examples() {
        let sphere = SurfacePatch::sphere(1.0).unwrap();
        let eq = coordinate_curve(&sphere, CoordinateCurveKind::Parallel, FRAC_PI_2).unwrap();
        let len = arc_length(&eq, 0.0, 2.0 * PI).unwrap();
        assert!((len - 2.0 * PI).abs() < 1e-12);
        let mer = coordinate_curve(&sphere, CoordinateCurveKind::Meridian, 0.0).unwrap();
        assert!((arc_length(&mer, 0.0, FRAC_PI_2).unwrap() - FRAC_PI_2).abs() < 1e-12);

        // √2(1 - e^{-2}) from the 256-bit oracle.
        let spiral = plane_log_spiral(1.0).unwrap();
        let len = arc_length(&spiral, 0.0, 2.0).unwrap();
        assert!((len - 1.222820569352273200880113).abs() < 1e-10 * len);
        assert_eq!(arc_length(&spiral, 2.0, 0.0).unwrap(), -len);
        assert!(arc_length(&mer, -0.1, 1.0).is_err());
    }

    #[test]
    fn circle_and_meridian_curvatures() {
        let plane = SurfacePatch::plane();
        for v in [0.5, 1.0, 3.0] {
            let circle = coordinate_curve(&plane, CoordinateCurveKind::Parallel, v).unwrap();
            let k = geodesic_curvature_numeric(&circle, 0.4).unwrap();
            assert!((k - 1.0 / v).abs() < 1e-10 / v, "{k}");
        }
        let sphere = SurfacePatch::sphere(2.0).unwrap();
        let mer = coordinate_curve(&sphere, CoordinateCurveKind::Meridian, 0.3).unwrap();
        assert!(geodesic_curvature_numeric(&mer, 1.0).unwrap().abs() < 1e-10);
        let pseudo = SurfacePatch::pseudosphere(2.0).unwrap();
        for v in [0.2, 1.0, 1.4] {
            let par = coordinate_curve(&pseudo, CoordinateCurveKind::Parallel, v).unwrap();
            let k = geodesic_curvature_numeric(&par, 0.0).unwrap();
            assert!((k + 0.5).abs() < 1e-10, "{k}");
        }
    }

    #[test]
    fn reversing_curve_or_surface_negates_k() {
        let c = sphere_loxodrome(1.0, 0.7).unwrap();
        let k = geodesic_curvature_numeric(&c, 0.4).unwrap();
        let rev = geodesic_curvature_numeric(&c.reversed(), 0.4).unwrap();
        let flip = geodesic_curvature_numeric(&c.with_surface_orientation(Orientation::Positive), 0.4).unwrap();
        assert!((k + rev).abs() < 1e-12);
        assert!((k + flip).abs() < 1e-12);
    }

    #[test]
    fn pseudosphere_loxodrome_follows_closed_form() {
        // du/dv = cot θ cos v / sin² v integrates to u0 + cot θ (1 - 1/sin v).
        let theta = FRAC_PI_3;
        let c = pseudosphere_loxodrome(1.0, theta, 0.25).unwrap();
        for v in [0.01, 0.1, 0.5, 1.0, 1.5] {
            let (u, vv) = c.chart_point(v).unwrap();
            let exact = 0.25 + (1.0 / theta.tan()) * (1.0 - 1.0 / v.sin());
            assert_eq!(vv, v);
            assert!((u - exact).abs() < 1e-9 * exact.abs().max(1.0), "v={v}: {u} vs {exact}");
        }
    }

    #[test]
    fn pseudosphere_meridian_loxodrome() {
        let c = pseudosphere_loxodrome(1.0, FRAC_PI_2, 0.6).unwrap();
        for v in [0.05, 0.7, 1.3] {
            assert_eq!(c.chart_point(v).unwrap().0, 0.6);
        }
    }

    #[test]
    fn pseudosphere_loxodrome_curvature_is_constant() {
        for (r, theta) in [(1.0, FRAC_PI_6), (2.0, FRAC_PI_3), (0.5, 2.5)] {
            let c = pseudosphere_loxodrome(r, theta, 0.0).unwrap();
            for v in [0.05, 0.4, 1.2] {
                let k = geodesic_curvature_numeric(&c, v).unwrap();
                assert!((k + theta.cos() / r).abs() < 1e-8, "R={r} θ={theta} v={v}: {k}");
                let ang = angle_to_parallel(&c, v).unwrap();
                assert!((ang - theta).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sample_reports_center_distance() {
        let c = sphere_loxodrome(2.0, 1.0).unwrap();
        let s = sample(&c, 0.3).unwrap();
        assert!((s.r.unwrap() - 1.2).abs() < 1e-15);
        let expected = (0.6f64).cos() / (0.6f64).sin() / 2.0 * FRAC_PI_4.cos();
        assert!(((s.k - expected) / expected).abs() < 1e-8);
    }
}
