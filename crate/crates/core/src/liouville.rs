//! Liouville's formula `k = k₁ cos θ + k₂ sin θ + dθ/ds` for curves on
//! orthogonally parametrized patches.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::curves::{angle_to_parallel, geodesic_curvature_numeric, ChartCurve, CoordinateTrace, Direction};
use crate::error::{GeomError, Result};
use crate::numdiff::richardson_derivative;
use crate::surface::{unit_normal, FirstForm};

/// `|F|` must stay below this multiple of `√(EG)`.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Terms of Liouville's formula at one point of a curve. `k1` is the geodesic
/// curvature of the parallel traversed with increasing `u`, `k2` that of the
/// meridian traversed along `N × φ_u`. `dtheta_ds` is the derivative of the
/// angle to the parallel with respect to arc length of the oriented curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiouvilleBreakdown {
    pub k1: f64,
    pub k2: f64,
    pub theta: f64,
    pub dtheta_ds: f64,
    pub k_liouville: f64,
    pub k_direct: f64,
    pub residual: f64,
}

fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

pub fn liouville_breakdown(curve: &ChartCurve, t: f64) -> Result<LiouvilleBreakdown> {
    let patch = curve.patch();
    let (u, v) = curve.chart_point(t)?;
    let jet = patch.jet(u, v)?;
    let form = FirstForm::from_jet(&jet);
    let bound = ORTHOGONALITY_TOL * (form.e * form.g).sqrt();
    if !(form.f.abs() < bound) {
        return Err(GeomError::NotOrthogonal { f: form.f, bound });
    }

    let domain = patch.domain();
    let parallel =
        ChartCurve::new(patch.clone(), Arc::new(CoordinateTrace::Parallel { v }), domain.u, Direction::Forward)?;
    let normal = unit_normal(&jet, patch.orientation())?;
    let across = normal.cross(jet.p_u).dot(jet.p_v);
    if across == 0.0 {
        return Err(GeomError::DegenerateJet { cross_norm: 0.0 });
    }
    let meridian_direction = if across > 0.0 { Direction::Forward } else { Direction::Backward };
    let meridian =
        ChartCurve::new(patch.clone(), Arc::new(CoordinateTrace::Meridian { u }), domain.v, meridian_direction)?;
    let k1 = geodesic_curvature_numeric(&parallel, u)?;
    let k2 = geodesic_curvature_numeric(&meridian, v)?;

    let theta = angle_to_parallel(curve, t)?;
    let dom = curve.t_domain();
    let h = (1e-2 * t.abs().max(1.0)).min(0.45 * dom.distance_to_edge(t));
    if !(h > 0.0) {
        return Err(GeomError::OutOfCurveDomain { t, min: dom.min, max: dom.max });
    }
    // Unwrapped relative to θ(t) so a crossing of ±π does not register as a jump.
    let dtheta_dt =
        richardson_derivative(|s| angle_to_parallel(curve, s).map(|a| theta + wrap_angle(a - theta)), t, h, 3)?.value;
    let ds_dt = curve.direction().sign() * curve.speed(t)?;
    let dtheta_ds = dtheta_dt / ds_dt;

    let k_direct = geodesic_curvature_numeric(curve, t)?;
    let k_liouville = k1 * theta.cos() + k2 * theta.sin() + dtheta_ds;
    Ok(LiouvilleBreakdown { k1, k2, theta, dtheta_ds, k_liouville, k_direct, residual: (k_liouville - k_direct).abs() })
}
