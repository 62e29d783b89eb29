//! The five figures, drawn as orthographic line art.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use logspiral_core::closed_form::k_theta_at;
use logspiral_core::curves::{plane_log_spiral, pseudosphere_loxodrome, sphere_loxodrome};
use logspiral_core::surface::SurfacePatch;
use logspiral_core::{Result, Vec3};

use crate::svg::Drawing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureName {
    Spiral,
    Pseudosphere,
    SphereLoxodrome,
    PseudosphereLoxodrome,
    KSurface,
}

/// Orthographic camera looking down at `elevation` radians above the
/// horizon, from the −y side.
#[derive(Debug, Clone, Copy)]
struct Camera {
    toward_viewer: Vec3,
    up: Vec3,
}

impl Camera {
    fn new(elevation: f64) -> Self {
        let (s, c) = elevation.sin_cos();
        Camera { toward_viewer: Vec3::new(0.0, -c, s), up: Vec3::new(0.0, s, c) }
    }

    fn project(&self, p: Vec3) -> (f64, f64) {
        (p.x, p.dot(self.up))
    }

    fn faces_viewer(&self, normal: Vec3) -> bool {
        normal.dot(self.toward_viewer) >= 0.0
    }
}

/// Splits a polyline into runs of visible and hidden points.
fn split_by_visibility(points: &[(Vec3, bool)], camera: &Camera) -> Vec<(bool, Vec<(f64, f64)>)> {
    let mut runs: Vec<(bool, Vec<(f64, f64)>)> = Vec::new();
    for &(p, visible) in points {
        let q = camera.project(p);
        match runs.last_mut() {
            Some((vis, run)) if *vis == visible => run.push(q),
            Some((_, run)) => {
                let last = *run.last().expect("runs are never empty");
                runs.push((visible, vec![last, q]));
            }
            None => runs.push((visible, vec![q])),
        }
    }
    runs
}

fn draw_runs(d: &mut Drawing, runs: Vec<(bool, Vec<(f64, f64)>)>, stroke: &str, width: f64) {
    for (visible, run) in runs {
        if visible {
            d.polyline(run, stroke, width);
        } else {
            d.dashed(run, "#b0b0b0", width * 0.6);
        }
    }
}

fn spiral() -> Result<Drawing> {
    let mut d = Drawing::new("Logarithmic spiral");
    let curve = plane_log_spiral(0.15)?;
    let pts: Vec<(f64, f64)> =
        (0..=1200).map(|i| curve.position(i as f64 * 0.025)).map(|p| p.map(|p| (p.x, p.y))).collect::<Result<_>>()?;
    for r in [1.0, 0.5, 0.25] {
        let circle = (0..=180).map(|i| {
            let a = 2.0 * PI * i as f64 / 180.0;
            (r * a.cos(), r * a.sin())
        });
        d.dashed(circle.collect(), "#b0b0b0", 0.8);
    }
    d.polyline(pts, "#1f4e9c", 1.6);
    d.dot((0.0, 0.0), 0.012, "black");
    Ok(d)
}

fn tractroid_wireframe(d: &mut Drawing, camera: &Camera, radius: f64) -> Result<()> {
    let patch = SurfacePatch::pseudosphere(radius)?;
    let floor = 0.06;
    // Outward normal; `sheet` = -1 is the mirror image in z.
    let normal_of = |u: f64, v: f64, sheet: f64| -> Vec3 {
        let (s, c) = v.sin_cos();
        Vec3::new(u.cos() * c, u.sin() * c, -sheet * s)
    };
    for sheet in [1.0, -1.0] {
        let point = |u: f64, v: f64| {
            let p = patch.position_unchecked(u, v);
            Vec3::new(p.x, p.y, sheet * p.z)
        };
        for j in 0..=10 {
            let v = floor + (FRAC_PI_2 - floor) * (j as f64 / 10.0).sqrt();
            let ring: Vec<(Vec3, bool)> = (0..=120)
                .map(|i| {
                    let u = 2.0 * PI * i as f64 / 120.0;
                    (point(u, v), camera.faces_viewer(normal_of(u, v, sheet)))
                })
                .collect();
            draw_runs(d, split_by_visibility(&ring, camera), "#7a7a7a", 0.6);
        }
        for i in 0..16 {
            let u = 2.0 * PI * i as f64 / 16.0;
            let line: Vec<(Vec3, bool)> = (0..=100)
                .map(|j| {
                    let v = floor + (FRAC_PI_2 - floor) * j as f64 / 100.0;
                    (point(u, v), camera.faces_viewer(normal_of(u, v, sheet)))
                })
                .collect();
            draw_runs(d, split_by_visibility(&line, camera), "#7a7a7a", 0.6);
        }
    }
    Ok(())
}

fn pseudosphere() -> Result<Drawing> {
    let mut d = Drawing::new("Pseudosphere");
    tractroid_wireframe(&mut d, &Camera::new(0.25), 1.0)?;
    Ok(d)
}

fn sphere_loxodrome_figure() -> Result<Drawing> {
    let mut d = Drawing::new("Loxodrome on a sphere");
    let camera = Camera::new(0.45);
    let patch = SurfacePatch::sphere(1.0)?;
    let outline: Vec<(f64, f64)> = (0..=240)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 240.0;
            (a.cos(), a.sin())
        })
        .collect();
    d.polyline(outline, "#7a7a7a", 0.8);
    for j in 1..6 {
        let v = PI * j as f64 / 6.0;
        let ring: Vec<(Vec3, bool)> = (0..=120)
            .map(|i| {
                let p = patch.position_unchecked(2.0 * PI * i as f64 / 120.0, v);
                (p, camera.faces_viewer(p))
            })
            .collect();
        draw_runs(&mut d, split_by_visibility(&ring, &camera), "#b8b8b8", 0.5);
    }
    for i in 0..12 {
        let u = PI * i as f64 / 6.0;
        let line: Vec<(Vec3, bool)> = (0..=120)
            .map(|j| {
                let p = patch.position_unchecked(u, PI * j as f64 / 120.0);
                (p, camera.faces_viewer(p))
            })
            .collect();
        draw_runs(&mut d, split_by_visibility(&line, &camera), "#b8b8b8", 0.5);
    }
    let curve = sphere_loxodrome(1.0, 0.12)?;
    let pts: Vec<(Vec3, bool)> = (1..2000)
        .map(|i| {
            let p = curve.position(FRAC_PI_2 * i as f64 / 2000.0)?;
            Ok((p, camera.faces_viewer(p)))
        })
        .collect::<Result<_>>()?;
    draw_runs(&mut d, split_by_visibility(&pts, &camera), "#1f4e9c", 1.4);
    Ok(d)
}

fn pseudosphere_loxodrome_figure() -> Result<Drawing> {
    let mut d = Drawing::new("Loxodrome on a pseudosphere");
    let camera = Camera::new(0.25);
    tractroid_wireframe(&mut d, &camera, 1.0)?;
    let curve = pseudosphere_loxodrome(1.0, FRAC_PI_6, 0.0)?;
    let pts: Vec<(Vec3, bool)> = (0..=1500)
        .map(|i| {
            let v = 0.06 + (FRAC_PI_2 - 0.06) * i as f64 / 1500.0;
            let p = curve.position(v)?;
            let (u, _) = curve.chart_point(v)?;
            let (s, c) = v.sin_cos();
            let normal = Vec3::new(u.cos() * c, u.sin() * c, -s);
            Ok((p, camera.faces_viewer(normal)))
        })
        .collect::<Result<_>>()?;
    draw_runs(&mut d, split_by_visibility(&pts, &camera), "#1f4e9c", 1.4);
    Ok(d)
}

/// Segments of the level set `value = level` over a rectangular grid, by
/// marching squares. `values[i][j]` sits at `(xs[i], ys[j])`; cells touching
/// a non-finite value are skipped.
pub fn contour_segments(xs: &[f64], ys: &[f64], values: &[Vec<f64>], level: f64) -> Vec<[(f64, f64); 2]> {
    let mut out = Vec::new();
    for i in 0..xs.len() - 1 {
        for j in 0..ys.len() - 1 {
            let corners = [
                (xs[i], ys[j], values[i][j]),
                (xs[i + 1], ys[j], values[i + 1][j]),
                (xs[i + 1], ys[j + 1], values[i + 1][j + 1]),
                (xs[i], ys[j + 1], values[i][j + 1]),
            ];
            if corners.iter().any(|c| !c.2.is_finite()) {
                continue;
            }
            let mut crossings = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (corners[e], corners[(e + 1) % 4]);
                let (da, db) = (a.2 - level, b.2 - level);
                if (da < 0.0) != (db < 0.0) {
                    let s = da / (da - db);
                    crossings.push((a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1)));
                }
            }
            match crossings.len() {
                2 => out.push([crossings[0], crossings[1]]),
                4 => {
                    let center = corners.iter().map(|c| c.2).sum::<f64>() / 4.0;
                    if (center < level) == (corners[0].2 < level) {
                        out.push([crossings[0], crossings[1]]);
                        out.push([crossings[2], crossings[3]]);
                    } else {
                        out.push([crossings[3], crossings[0]]);
                        out.push([crossings[1], crossings[2]]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn k_surface() -> Result<Drawing> {
    let mut d = Drawing::new("The function k_theta(K, r) at theta = pi/4");
    let (k_min, k_max, r_min, r_max) = (-4.0, 4.0, 0.1, 1.5);
    let n = 81;
    let ks: Vec<f64> = (0..n).map(|i| k_min + (k_max - k_min) * i as f64 / (n - 1) as f64).collect();
    let rs: Vec<f64> = (0..n).map(|j| r_min + (r_max - r_min) * j as f64 / (n - 1) as f64).collect();
    let values: Vec<Vec<f64>> =
        ks.iter().map(|&k| rs.iter().map(|&r| k_theta_at(k, r, FRAC_PI_4).unwrap_or(f64::NAN)).collect()).collect();
    // Plot coordinates: K to [0, 8], r to [0, 8].
    let px = |k: f64| (k - k_min) / (k_max - k_min) * 8.0;
    let py = |r: f64| (r - r_min) / (r_max - r_min) * 8.0;
    d.polyline(vec![(0.0, 0.0), (8.0, 0.0), (8.0, 8.0), (0.0, 8.0), (0.0, 0.0)], "black", 0.8);
    d.dashed(vec![(px(0.0), 0.0), (px(0.0), 8.0)], "#b0b0b0", 0.6);
    // Boundary r√K = π of the domain of definition.
    let boundary: Vec<(f64, f64)> = (0..=100)
        .map(|i| {
            let r = r_min + (r_max - r_min) * i as f64 / 100.0;
            let k = (PI / r).powi(2);
            (px(k.min(k_max)), py(r))
        })
        .filter(|p| p.0 < 8.0)
        .collect();
    d.polyline(boundary, "#9c1f1f", 0.8);
    let levels = [-1.0, 0.0, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0];
    for (idx, &level) in levels.iter().enumerate() {
        let stroke = format!("rgb({},{},{})", 20 + 25 * idx, 60, 180 - 15 * idx);
        for [a, b] in contour_segments(&ks, &rs, &values, level) {
            d.polyline(vec![(px(a.0), py(a.1)), (px(b.0), py(b.1))], &stroke, 1.0);
        }
    }
    for k in [-4.0, 0.0, 4.0] {
        d.text((px(k) - 0.1, -0.4), 12.0, &format!("{k}"));
    }
    for r in [0.5, 1.0, 1.5] {
        d.text((-0.5, py(r) - 0.05), 12.0, &format!("{r}"));
    }
    d.text((4.0, -0.8), 14.0, "K");
    d.text((-0.9, 4.0), 14.0, "r");
    Ok(d)
}

pub fn render(name: FigureName) -> Result<String> {
    let drawing = match name {
        FigureName::Spiral => spiral()?,
        FigureName::Pseudosphere => pseudosphere()?,
        FigureName::SphereLoxodrome => sphere_loxodrome_figure()?,
        FigureName::PseudosphereLoxodrome => pseudosphere_loxodrome_figure()?,
        FigureName::KSurface => k_surface()?,
    };
    Ok(drawing.render())
}
