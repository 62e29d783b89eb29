//! Sampling of spirals and loxodromes for the `trace` command.

use std::f64::consts::{FRAC_PI_2, PI};

use logspiral_core::closed_form::{cos_angle, k_theta_at, max_radius};
use logspiral_core::curves::{
    angle_to_parallel, coordinate_curve, geodesic_curvature_numeric, plane_log_spiral, pseudosphere_loxodrome,
    sphere_loxodrome, ChartCurve, CoordinateCurveKind,
};
use logspiral_core::polar::{embed_polar_trace, PolarSpiral};
use logspiral_core::surface::SurfacePatch;
use logspiral_core::{GeomError, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TraceSurface {
    Plane,
    Sphere,
    Pseudosphere,
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRequest {
    pub surface: TraceSurface,
    pub gaussian_curvature: f64,
    pub radius: f64,
    pub theta: f64,
    pub r0: Option<f64>,
    pub r1: Option<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub position: Vec3,
    pub u: f64,
    pub v: f64,
    pub k: f64,
    pub theta_meas: f64,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

fn range(req: &TraceRequest, default: (f64, f64), limit: (f64, f64)) -> Result<(f64, f64)> {
    let (r0, r1) = (req.r0.unwrap_or(default.0), req.r1.unwrap_or(default.1));
    if !(r0 < r1) || !(r0 > limit.0) || !(r1 < limit.1) {
        return Err(GeomError::Domain(format!(
            "trace range [{r0}, {r1}] must be increasing and inside ({}, {})",
            limit.0, limit.1
        )));
    }
    Ok((r0, r1))
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("characteristic angle θ = {theta} must lie in (0, π)")))
    }
}

fn sample_curve(curve: &ChartCurve, ts: &[f64]) -> Result<Vec<TraceRow>> {
    ts.iter()
        .map(|&t| {
            let (u, v) = curve.chart_point(t)?;
            Ok(TraceRow {
                t,
                position: curve.position(t)?,
                u,
                v,
                k: geodesic_curvature_numeric(curve, t)?,
                theta_meas: angle_to_parallel(curve, t)?,
            })
        })
        .collect()
}

/// Plane spiral of angle `θ` sampled at distances `rs` from the origin.
fn plane_rows(theta: f64, rs: &[f64]) -> Result<Vec<TraceRow>> {
    if cos_angle(theta) == 0.0 {
        let ray = coordinate_curve(&SurfacePatch::plane(), CoordinateCurveKind::Meridian, 0.0)?;
        return sample_curve(&ray, rs);
    }
    let a = theta.tan();
    let mut curve = plane_log_spiral(a)?;
    if theta > FRAC_PI_2 {
        curve = curve.reversed();
    }
    let ts: Vec<f64> = rs.iter().map(|r| -r.ln() / a).collect();
    sample_curve(&curve, &ts)
}

fn sphere_rows(radius: f64, theta: f64, rs: &[f64]) -> Result<Vec<TraceRow>> {
    let patch = SurfacePatch::sphere(radius)?;
    if cos_angle(theta) == 0.0 {
        let meridian = coordinate_curve(&patch, CoordinateCurveKind::Meridian, 0.0)?;
        let vs: Vec<f64> = rs.iter().map(|r| r / radius).collect();
        return sample_curve(&meridian, &vs);
    }
    let curve = sphere_loxodrome(radius, cos_angle(theta) / theta.sin())?;
    let ts: Vec<f64> = rs.iter().map(|r| r / (2.0 * radius)).collect();
    sample_curve(&curve, &ts)
}

fn polar_rows(k: f64, theta: f64, rs: &[f64], r0: f64) -> Result<Vec<TraceRow>> {
    let spiral = PolarSpiral::new(k, theta, r0, 0.0)?;
    if k == 0.0 {
        return sample_curve(&embed_polar_trace(&SurfacePatch::plane(), &spiral)?, rs);
    }
    if k > 0.0 {
        let patch = SurfacePatch::sphere(1.0 / k.sqrt())?;
        return sample_curve(&embed_polar_trace(&patch, &spiral)?, rs);
    }
    // No embedding: positions are the polar chart drawn flat.
    rs.iter()
        .map(|&r| {
            let p = spiral.point(r)?;
            let sqrt_g = spiral.metric.sqrt_g(r);
            Ok(TraceRow {
                t: r,
                position: Vec3::new(r * p.u.cos(), r * p.u.sin(), 0.0),
                u: p.u,
                v: r,
                k: k_theta_at(k, r, theta)?,
                theta_meas: (-1.0f64).atan2(sqrt_g * spiral.slope(r)),
            })
        })
        .collect()
}

pub fn trace_rows(req: &TraceRequest) -> Result<Vec<TraceRow>> {
    check_theta(req.theta)?;
    if !(req.radius > 0.0 && req.radius.is_finite()) {
        return Err(GeomError::Domain(format!("radius R = {} must be positive", req.radius)));
    }
    let n = req.samples;
    match req.surface {
        TraceSurface::Plane => {
            let (a, b) = range(req, (0.05, 1.0), (0.0, f64::INFINITY))?;
            plane_rows(req.theta, &geomspace(a, b, n))
        }
        TraceSurface::Sphere => {
            let lim = PI * req.radius;
            let (a, b) = range(req, (0.05 * lim, 0.95 * lim), (0.0, lim))?;
            sphere_rows(req.radius, req.theta, &linspace(a, b, n))
        }
        TraceSurface::Pseudosphere => {
            // r0, r1 bound the profile parameter v of the tractroid.
            let patch = SurfacePatch::pseudosphere(req.radius)?;
            let floor = patch.domain().v.min;
            let (a, b) = range(req, (0.05, 1.5), (floor - f64::EPSILON, FRAC_PI_2))?;
            let curve = pseudosphere_loxodrome(req.radius, req.theta, 0.0)?;
            sample_curve(&curve, &linspace(a, b, n))
        }
        TraceSurface::Polar => {
            let k = req.gaussian_curvature;
            let lim = max_radius(k);
            let (a, b) = range(req, (0.05, (0.9 * lim).min(2.0)), (0.0, lim))?;
            polar_rows(k, req.theta, &linspace(a, b, n), a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn request(surface: TraceSurface) -> TraceRequest {
        TraceRequest {
            surface,
            gaussian_curvature: 0.0,
            radius: 1.0,
            theta: FRAC_PI_4,
            r0: None,
            r1: None,
            samples: 20,
        }
    }

    #[test]
    fn plane_rows_follow_closed_form() {
        for theta in [0.4, FRAC_PI_4, 2.2] {
            let rows = trace_rows(&TraceRequest { theta, ..request(TraceSurface::Plane) }).unwrap();
            for row in rows {
                let r = row.position.norm();
                assert!((row.k - theta.cos() / r).abs() < 1e-5 * (theta.cos() / r).abs());
                assert!((row.theta_meas - theta).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn sphere_rows_follow_closed_form() {
        let rows = trace_rows(&TraceRequest { radius: 2.0, samples: 30, ..request(TraceSurface::Sphere) }).unwrap();
        for row in rows {
            let r = 2.0 * row.v;
            let expected = (r / 2.0).cos() / (r / 2.0).sin() / 2.0 * FRAC_PI_4.cos();
            assert!((row.k - expected).abs() <= 1e-5 * expected.abs().max(1e-3));
        }
    }

    #[test]
    fn polar_rows_for_each_sign() {
        for k in [-1.0, 0.0, 1.0] {
            let rows = trace_rows(&TraceRequest { gaussian_curvature: k, ..request(TraceSurface::Polar) }).unwrap();
            for row in rows {
                let expected = k_theta_at(k, row.t, FRAC_PI_4).unwrap();
                assert!((row.k - expected).abs() < 1e-5 * expected.abs().max(1.0), "K={k}");
                assert!((row.theta_meas + FRAC_PI_4).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn bad_ranges() {
        assert!(trace_rows(&TraceRequest { r0: Some(2.0), r1: Some(1.0), ..request(TraceSurface::Plane) }).is_err());
        assert!(trace_rows(&TraceRequest { r1: Some(4.0), ..request(TraceSurface::Sphere) }).is_err());
        assert!(trace_rows(&TraceRequest { theta: 0.0, ..request(TraceSurface::Plane) }).is_err());
    }
}
