//! Parametrized surfaces, their 2-jets, fundamental forms and Gaussian
//! curvature.
//!
//! Every built-in surface is a surface of revolution about the z-axis with the
//! standard parametrization `φ(u, v) = (x(v) cos u, x(v) sin u, z(v))`, where
//! `(x, z)` is the generating profile curve. Analytic jets are assembled from
//! the profile derivatives; finite-difference jets difference `φ` directly, so
//! the two routes share nothing beyond the position map.
//!
//! The second fundamental form uses the coefficient convention
//! `e = ⟨N_u, φ_u⟩`, `f = ⟨N_u, φ_v⟩`, `g = ⟨N_v, φ_v⟩`. This is the negative of
//! the more common `⟨N, φ_uu⟩` convention; the Gaussian curvature is unaffected
//! because all three coefficients change sign together.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::numdiff::{richardson_derivative, richardson_second_derivative};
use crate::vec3::Vec3;

/// Jets with `|p_u × p_v|` below this are rejected as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Default lower bound of the pseudosphere's `v` range.
pub const PSEUDOSPHERE_V_FLOOR: f64 = 1e-3;

/// How partial derivatives of a patch are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JetMode {
    #[default]
    Analytic,
    FiniteDifference,
}

/// Choice between the two unit normals `±(φ_u × φ_v)/|φ_u × φ_v|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `N = +(φ_u × φ_v)/|φ_u × φ_v|`
    Positive,
    /// `N = -(φ_u × φ_v)/|φ_u × φ_v|`
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// A real interval with independently open or closed ends. Infinite ends are
/// always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
    pub min_open: bool,
    pub max_open: bool,
}

impl Interval {
    pub fn open(min: f64, max: f64) -> Self {
        Interval { min, max, min_open: true, max_open: true }
    }

    pub fn closed(min: f64, max: f64) -> Self {
        Interval { min, max, min_open: false, max_open: false }
    }

    pub fn real_line() -> Self {
        Interval::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.min_open { x > self.min } else { x >= self.min };
        let below = if self.max_open { x < self.max } else { x <= self.max };
        above && below
    }

    /// Membership in the closure `[min, max]`.
    pub fn closure_contains(&self, x: f64) -> bool {
        x >= self.min && x <= self.max
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.min < self.max)
    }

    /// Distance from `x` to the nearest finite end.
    pub fn distance_to_edge(&self, x: f64) -> f64 {
        (x - self.min).min(self.max - x)
    }
}

/// Chart domain of a patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub u: Interval,
    pub v: Interval,
}

impl Domain {
    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u.contains(u) && self.v.contains(v)
    }
}

/// Value and first two derivatives of a profile curve `t ↦ (x(t), z(t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub x: f64,
    pub z: f64,
    pub dx: f64,
    pub dz: f64,
    pub ddx: f64,
    pub ddz: f64,
}

/// Generating curve of a surface of revolution in the xz-plane.
pub trait Profile: Send + Sync + fmt::Debug {
    fn point(&self, t: f64) -> (f64, f64);

    /// Derivatives of the profile. The default differentiates [`Profile::point`]
    /// numerically; closed-form profiles override it.
    fn jet(&self, t: f64) -> ProfileJet {
        let h = 1e-2 * t.abs().max(1.0);
        let (x, z) = self.point(t);
        let first = |g: fn((f64, f64)) -> f64| {
            richardson_derivative(|s| Ok(g(self.point(s))), t, h, 3).map(|e| e.value).unwrap_or(f64::NAN)
        };
        let second = |g: fn((f64, f64)) -> f64| {
            richardson_second_derivative(|s| Ok(g(self.point(s))), t, h, 3).map(|e| e.value).unwrap_or(f64::NAN)
        };
        ProfileJet { x, z, dx: first(|p| p.0), dz: first(|p| p.1), ddx: second(|p| p.0), ddz: second(|p| p.1) }
    }
}

/// `α(t) = (t, 0)`: revolving it gives the polar parametrization of the xy-plane.
#[derive(Debug, Clone, Copy)]
pub struct PlaneProfile;

impl Profile for PlaneProfile {
    fn point(&self, t: f64) -> (f64, f64) {
        (t, 0.0)
    }

    fn jet(&self, t: f64) -> ProfileJet {
        ProfileJet { x: t, z: 0.0, dx: 1.0, dz: 0.0, ddx: 0.0, ddz: 0.0 }
    }
}

/// `α(t) = (R sin t, R cos t)`, a meridian semicircle.
#[derive(Debug, Clone, Copy)]
pub struct SemicircleProfile {
    pub radius: f64,
}

impl Profile for SemicircleProfile {
    fn point(&self, t: f64) -> (f64, f64) {
        (self.radius * t.sin(), self.radius * t.cos())
    }

    fn jet(&self, t: f64) -> ProfileJet {
        let r = self.radius;
        let (s, c) = t.sin_cos();
        ProfileJet { x: r * s, z: r * c, dx: r * c, dz: -r * s, ddx: -r * s, ddz: -r * c }
    }
}

/// The tractrix `α(t) = (R sin t, R (ln tan(t/2) + cos t))`.
#[derive(Debug, Clone, Copy)]
pub struct TractrixProfile {
    pub radius: f64,
}

impl Profile for TractrixProfile {
    fn point(&self, t: f64) -> (f64, f64) {
        let r = self.radius;
        (r * t.sin(), r * ((0.5 * t).tan().ln() + t.cos()))
    }

    fn jet(&self, t: f64) -> ProfileJet {
        let r = self.radius;
        let (s, c) = t.sin_cos();
        let (x, z) = self.point(t);
        // z' = R cos²t / sin t, z'' = -R cos t (1 + sin²t) / sin²t
        ProfileJet { x, z, dx: r * c, dz: r * c * c / s, ddx: -r * s, ddz: -r * c * (1.0 + s * s) / (s * s) }
    }
}

/// Which of the built-in surfaces a patch is, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    Plane,
    Sphere { radius: f64 },
    Pseudosphere { radius: f64 },
    Revolution,
}

/// Position and partial derivatives of a patch at one chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub p: Vec3,
    pub p_u: Vec3,
    pub p_v: Vec3,
    pub p_uu: Vec3,
    pub p_uv: Vec3,
    pub p_vv: Vec3,
}

impl Jet2 {
    /// Largest norm among the stored vectors; used to scale comparisons.
    pub fn scale(&self) -> f64 {
        [self.p, self.p_u, self.p_v, self.p_uu, self.p_uv, self.p_vv].iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to another jet.
    pub fn max_distance(&self, other: &Jet2) -> f64 {
        [
            (self.p, other.p),
            (self.p_u, other.p_u),
            (self.p_v, other.p_v),
            (self.p_uu, other.p_uu),
            (self.p_uv, other.p_uv),
            (self.p_vv, other.p_vv),
        ]
        .iter()
        .map(|(a, b)| a.distance(*b))
        .fold(0.0, f64::max)
    }
}

/// Coefficients `E, F, G` of the first fundamental form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn from_jet(jet: &Jet2) -> Self {
        FirstForm { e: jet.p_u.dot(jet.p_u), f: jet.p_u.dot(jet.p_v), g: jet.p_v.dot(jet.p_v) }
    }

    /// `EG - F²`
    pub fn determinant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// Inner product of two chart tangent vectors `(du, dv)`.
    pub fn inner(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        self.e * a.0 * b.0 + self.f * (a.0 * b.1 + a.1 * b.0) + self.g * a.1 * b.1
    }
}

/// Coefficients `e, f, g` of the second fundamental form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormCoefficients {
    pub first: FirstForm,
    pub second: SecondForm,
}

impl FormCoefficients {
    /// `K = (eg - f²)/(EG - F²)`
    pub fn gaussian_curvature(&self) -> f64 {
        (self.second.e * self.second.g - self.second.f * self.second.f) / self.first.determinant()
    }
}

/// A parametrization `φ: (u, v) ↦ ℝ³` with domain, orientation and, for the
/// built-ins, the exact Gaussian curvature it is meant to have.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    kind: SurfaceKind,
    profile: Arc<dyn Profile>,
    domain: Domain,
    orientation: Orientation,
    known_k: Option<f64>,
    jet_mode: JetMode,
}

fn check_radius(radius: f64) -> Result<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(GeomError::BadParameter(format!("radius must be positive and finite, got {radius}")))
    }
}

impl SurfacePatch {
    /// The xy-plane in polar coordinates `φ(u, v) = (v cos u, v sin u, 0)`,
    /// oriented by the upward normal `(0, 0, 1)`.
    pub fn plane() -> Self {
        SurfacePatch {
            kind: SurfaceKind::Plane,
            profile: Arc::new(PlaneProfile),
            domain: Domain { u: Interval::real_line(), v: Interval::open(0.0, f64::INFINITY) },
            orientation: Orientation::Negative,
            known_k: Some(0.0),
            jet_mode: JetMode::Analytic,
        }
    }

    /// The sphere `φ(u, v) = R (sin v cos u, sin v sin u, cos v)` with the
    /// outward normal `φ/R`.
    pub fn sphere(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(SurfacePatch {
            kind: SurfaceKind::Sphere { radius },
            profile: Arc::new(SemicircleProfile { radius }),
            domain: Domain { u: Interval::real_line(), v: Interval::open(0.0, PI) },
            orientation: Orientation::Negative,
            known_k: Some(1.0 / (radius * radius)),
            jet_mode: JetMode::Analytic,
        })
    }

    /// The pseudosphere of radius `R`, revolved from the tractrix, with
    /// `v ∈ [v_floor, π/2]` and normal `+(φ_u × φ_v)/|φ_u × φ_v|`.
    pub fn pseudosphere(radius: f64) -> Result<Self> {
        Self::pseudosphere_with_floor(radius, PSEUDOSPHERE_V_FLOOR)
    }

    pub fn pseudosphere_with_floor(radius: f64, v_floor: f64) -> Result<Self> {
        check_radius(radius)?;
        if !(v_floor > 0.0 && v_floor < FRAC_PI_2) {
            return Err(GeomError::BadParameter(format!("pseudosphere v_floor must lie in (0, π/2), got {v_floor}")));
        }
        Ok(SurfacePatch {
            kind: SurfaceKind::Pseudosphere { radius },
            profile: Arc::new(TractrixProfile { radius }),
            domain: Domain { u: Interval::real_line(), v: Interval::closed(v_floor, FRAC_PI_2) },
            orientation: Orientation::Positive,
            known_k: Some(-1.0 / (radius * radius)),
            jet_mode: JetMode::Analytic,
        })
    }

    /// Standard parametrization of the surface obtained by revolving `profile`
    /// about the z-axis, for `v` in `v_range`.
    pub fn revolution(profile: Arc<dyn Profile>, v_range: Interval, orientation: Orientation) -> Result<Self> {
        if v_range.is_degenerate() {
            return Err(GeomError::BadParameter("profile parameter range is empty".into()));
        }
        Ok(SurfacePatch {
            kind: SurfaceKind::Revolution,
            profile,
            domain: Domain { u: Interval::real_line(), v: v_range },
            orientation,
            known_k: None,
            jet_mode: JetMode::Analytic,
        })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_jet_mode(mut self, mode: JetMode) -> Self {
        self.jet_mode = mode;
        self
    }

    pub fn with_known_k(mut self, k: Option<f64>) -> Self {
        self.known_k = k;
        self
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn known_k(&self) -> Option<f64> {
        self.known_k
    }

    pub fn jet_mode(&self) -> JetMode {
        self.jet_mode
    }

    /// Profile curve `(x(v), z(v))` and its derivatives.
    pub fn profile_jet(&self, v: f64) -> ProfileJet {
        self.profile.jet(v)
    }

    fn check_domain(&self, u: f64, v: f64) -> Result<()> {
        if u.is_finite() && v.is_finite() && self.domain.contains(u, v) {
            Ok(())
        } else {
            Err(GeomError::OutOfDomain { u, v })
        }
    }

    /// `φ(u, v)` without a domain check.
    pub fn position_unchecked(&self, u: f64, v: f64) -> Vec3 {
        let (x, z) = self.profile.point(v);
        let (s, c) = u.sin_cos();
        Vec3::new(x * c, x * s, z)
    }

    pub fn position(&self, u: f64, v: f64) -> Result<Vec3> {
        self.check_domain(u, v)?;
        Ok(self.position_unchecked(u, v))
    }

    /// 2-jet using the patch's configured [`JetMode`].
    pub fn jet(&self, u: f64, v: f64) -> Result<Jet2> {
        eval_jet(self, u, v, self.jet_mode)
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Jet2 {
        let pj = self.profile.jet(v);
        let (s, c) = u.sin_cos();
        Jet2 {
            p: Vec3::new(pj.x * c, pj.x * s, pj.z),
            p_u: Vec3::new(-pj.x * s, pj.x * c, 0.0),
            p_v: Vec3::new(pj.dx * c, pj.dx * s, pj.dz),
            p_uu: Vec3::new(-pj.x * c, -pj.x * s, 0.0),
            p_uv: Vec3::new(-pj.dx * s, pj.dx * c, 0.0),
            p_vv: Vec3::new(pj.ddx * c, pj.ddx * s, pj.ddz),
        }
    }

    fn finite_difference_jet(&self, u: f64, v: f64) -> Result<Jet2> {
        let eps = f64::EPSILON;
        let h1u = eps.cbrt() * u.abs().max(1.0);
        let h1v = eps.cbrt() * v.abs().max(1.0);
        let h2u = eps.powf(0.25) * u.abs().max(1.0);
        let h2v = eps.powf(0.25) * v.abs().max(1.0);
        let phi = |uu: f64, vv: f64| -> Result<Vec3> {
            let p = self.position_unchecked(uu, vv);
            if p.is_finite() {
                Ok(p)
            } else {
                Err(GeomError::NumericalBreakdown(format!("non-finite surface point at ({uu}, {vv})")))
            }
        };
        // One Richardson level: steps 2h and h.
        let p_u = richardson_derivative(|x| phi(x, v), u, 2.0 * h1u, 1)?.value;
        let p_v = richardson_derivative(|y| phi(u, y), v, 2.0 * h1v, 1)?.value;
        let p_uu = richardson_second_derivative(|x| phi(x, v), u, 2.0 * h2u, 1)?.value;
        let p_vv = richardson_second_derivative(|y| phi(u, y), v, 2.0 * h2v, 1)?.value;
        let mixed = |hu: f64, hv: f64| -> Result<Vec3> {
            let d = phi(u + hu, v + hv)? - phi(u + hu, v - hv)? - phi(u - hu, v + hv)? + phi(u - hu, v - hv)?;
            Ok(d / (4.0 * hu * hv))
        };
        let coarse = mixed(2.0 * h2u, 2.0 * h2v)?;
        let fine = mixed(h2u, h2v)?;
        let p_uv = (fine * 4.0 - coarse) / 3.0;
        Ok(Jet2 { p: phi(u, v)?, p_u, p_v, p_uu, p_uv, p_vv })
    }
}

/// Position and first/second partials of `patch` at `(u, v)`.
///
/// Finite-difference jets use central differences with per-axis steps
/// `∛ε·max(1, |x|)` for first partials and `ε^¼·max(1, |x|)` for second
/// partials, each extrapolated once.
pub fn eval_jet(patch: &SurfacePatch, u: f64, v: f64, mode: JetMode) -> Result<Jet2> {
    patch.check_domain(u, v)?;
    let jet = match mode {
        JetMode::Analytic => patch.analytic_jet(u, v),
        JetMode::FiniteDifference => patch.finite_difference_jet(u, v)?,
    };
    let cross_norm = jet.p_u.cross(jet.p_v).norm();
    if !(cross_norm >= DEGENERACY_THRESHOLD) {
        return Err(GeomError::DegenerateJet { cross_norm });
    }
    Ok(jet)
}

/// `N = ±(φ_u × φ_v)/|φ_u × φ_v|`
pub fn unit_normal(jet: &Jet2, orientation: Orientation) -> Result<Vec3> {
    let n = jet.p_u.cross(jet.p_v);
    let norm = n.norm();
    if !(norm >= DEGENERACY_THRESHOLD) {
        return Err(GeomError::DegenerateJet { cross_norm: norm });
    }
    Ok(n * (orientation.sign() / norm))
}

/// The unit normal and its partials `N_u`, `N_v`, obtained by differentiating
/// the normalized cross product through the jet.
pub fn normal_with_partials(jet: &Jet2, orientation: Orientation) -> Result<(Vec3, Vec3, Vec3)> {
    let n = jet.p_u.cross(jet.p_v);
    let norm = n.norm();
    if !(norm >= DEGENERACY_THRESHOLD) {
        return Err(GeomError::DegenerateJet { cross_norm: norm });
    }
    let unit = n / norm;
    let n_u = jet.p_uu.cross(jet.p_v) + jet.p_u.cross(jet.p_uv);
    let n_v = jet.p_uv.cross(jet.p_v) + jet.p_u.cross(jet.p_vv);
    let s = orientation.sign();
    let d = |dn: Vec3| (dn - unit * unit.dot(dn)) * (s / norm);
    Ok((unit * s, d(n_u), d(n_v)))
}

pub fn fundamental_forms(patch: &SurfacePatch, u: f64, v: f64) -> Result<FormCoefficients> {
    let jet = patch.jet(u, v)?;
    forms_from_jet(&jet, patch.orientation())
}

pub fn forms_from_jet(jet: &Jet2, orientation: Orientation) -> Result<FormCoefficients> {
    let (_, n_u, n_v) = normal_with_partials(jet, orientation)?;
    Ok(FormCoefficients {
        first: FirstForm::from_jet(jet),
        second: SecondForm { e: n_u.dot(jet.p_u), f: n_u.dot(jet.p_v), g: n_v.dot(jet.p_v) },
    })
}

pub fn gaussian_curvature(patch: &SurfacePatch, u: f64, v: f64) -> Result<f64> {
    Ok(fundamental_forms(patch, u, v)?.gaussian_curvature())
}
