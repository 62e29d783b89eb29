//! Minimal SVG 1.1 writer: polylines, circles and text in user coordinates,
//! with the y axis pointing up and a viewBox fitted to the content.

use std::fmt::Write as _;

use crate::format::coord;

#[derive(Debug, Clone)]
enum Item {
    Polyline { points: Vec<(f64, f64)>, stroke: String, width: f64, dashed: bool },
    Dot { at: (f64, f64), radius: f64, fill: String },
    Text { at: (f64, f64), size: f64, body: String },
}

#[derive(Debug, Clone, Default)]
pub struct Drawing {
    title: String,
    items: Vec<Item>,
}

impl Drawing {
    pub fn new(title: &str) -> Self {
        Drawing { title: title.to_string(), items: Vec::new() }
    }

    pub fn polyline(&mut self, points: Vec<(f64, f64)>, stroke: &str, width: f64) {
        self.add_line(points, stroke, width, false);
    }

    pub fn dashed(&mut self, points: Vec<(f64, f64)>, stroke: &str, width: f64) {
        self.add_line(points, stroke, width, true);
    }

    fn add_line(&mut self, points: Vec<(f64, f64)>, stroke: &str, width: f64, dashed: bool) {
        let points: Vec<_> = points.into_iter().filter(|p| p.0.is_finite() && p.1.is_finite()).collect();
        if points.len() >= 2 {
            self.items.push(Item::Polyline { points, stroke: stroke.to_string(), width, dashed });
        }
    }

    pub fn dot(&mut self, at: (f64, f64), radius: f64, fill: &str) {
        self.items.push(Item::Dot { at, radius, fill: fill.to_string() });
    }

    pub fn text(&mut self, at: (f64, f64), size: f64, body: &str) {
        self.items.push(Item::Text { at, size, body: body.to_string() });
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |(x, y): (f64, f64)| {
            b.0 = b.0.min(x);
            b.1 = b.1.min(y);
            b.2 = b.2.max(x);
            b.3 = b.3.max(y);
        };
        for item in &self.items {
            match item {
                Item::Polyline { points, .. } => points.iter().copied().for_each(&mut grow),
                Item::Dot { at, radius, .. } => {
                    grow((at.0 - radius, at.1 - radius));
                    grow((at.0 + radius, at.1 + radius));
                }
                Item::Text { at, .. } => grow(*at),
            }
        }
        if !b.0.is_finite() {
            return (0.0, 0.0, 1.0, 1.0);
        }
        b
    }

    /// The document; the viewBox is the bounding box grown by 5% per side.
    pub fn render(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let (w, h) = ((x1 - x0).max(1e-3 * span), (y1 - y0).max(1e-3 * span));
        let (mx, my) = (0.05 * w, 0.05 * h);
        // Flip y: user y maps to -y in SVG space.
        let (vx, vy, vw, vh) = (x0 - mx, -(y1 + my), w + 2.0 * mx, h + 2.0 * my);
        let unit = vw.max(vh) / 800.0;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            coord(800.0 * vw / vw.max(vh)),
            coord(800.0 * vh / vw.max(vh)),
            coord(vx),
            coord(vy),
            coord(vw),
            coord(vh)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
            coord(vx),
            coord(vy),
            coord(vw),
            coord(vh)
        );
        for item in &self.items {
            match item {
                Item::Polyline { points, stroke, width, dashed } => {
                    let pts: Vec<String> =
                        points.iter().map(|(x, y)| format!("{},{}", coord(*x), coord(-*y))).collect();
                    let dash =
                        if *dashed { format!(r#" stroke-dasharray="{}""#, coord(4.0 * unit)) } else { String::new() };
                    let _ = writeln!(
                        out,
                        r#"<polyline fill="none" stroke="{}" stroke-width="{}"{} points="{}"/>"#,
                        stroke,
                        coord(width * unit),
                        dash,
                        pts.join(" ")
                    );
                }
                Item::Dot { at, radius, fill } => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
                        coord(at.0),
                        coord(-at.1),
                        coord(*radius),
                        fill
                    );
                }
                Item::Text { at, size, body } => {
                    let _ = writeln!(
                        out,
                        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="{}">{}</text>"#,
                        coord(at.0),
                        coord(-at.1),
                        coord(size * unit),
                        escape(body)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn view_box_has_margin() {
        let mut d = Drawing::new("t");
        d.polyline(vec![(0.0, 0.0), (10.0, 20.0)], "black", 1.0);
        let svg = d.render();
        assert!(svg.contains(r#"viewBox="-0.500 -21.000 11.000 22.000""#), "{svg}");
    }

    #[test]
    fn non_finite_points_are_dropped() {
        let mut d = Drawing::new("t");
        d.polyline(vec![(0.0, 0.0), (f64::NAN, 1.0)], "black", 1.0);
        assert!(!d.render().contains("polyline"));
    }
}
