//! Static SVG 1.1 figures with deterministic output.

use std::fmt::Write;

use crate::conic::Conic;
use crate::linalg;
use crate::poncelet::point_on_conic;
use crate::projective::{HLine, HPoint};
use crate::scalar::Tolerance;

const WIDTH: f64 = 800.0;
const CONIC_SAMPLES: usize = 256;

pub struct Svg {
    min: (f64, f64),
    max: (f64, f64),
    scale: f64,
    height: f64,
    body: String,
}

impl Svg {
    /// Viewport around the bounding box of `points` with a relative margin.
    pub fn fit(points: &[(f64, f64)], margin: f64) -> Svg {
        let finite: Vec<_> = points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()).collect();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &finite {
            x0 = x0.min(p.0);
            y0 = y0.min(p.1);
            x1 = x1.max(p.0);
            y1 = y1.max(p.1);
        }
        if finite.is_empty() {
            (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        let (mx, my) = ((x1 - x0).max(extent * 0.05) * margin, (y1 - y0).max(extent * 0.05) * margin);
        let min = (x0 - mx, y0 - my);
        let max = (x1 + mx, y1 + my);
        let scale = WIDTH / (max.0 - min.0);
        let height = (max.1 - min.1) * scale;
        Svg {
            min,
            max,
            scale,
            height,
            body: String::new(),
        }
    }

    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        ((p.0 - self.min.0) * self.scale, (self.max.1 - p.1) * self.scale)
    }

    fn in_range(&self, p: (f64, f64)) -> bool {
        let span = (self.max.0 - self.min.0).max(self.max.1 - self.min.1);
        p.0.is_finite()
            && p.1.is_finite()
            && (p.0 - self.min.0).abs() < 20.0 * span
            && (p.1 - self.min.1).abs() < 20.0 * span
    }

    fn path(&mut self, pts: &[(f64, f64)], closed: bool, style: &str) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.px(p);
            let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, x, y);
        }
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(self.body, "  <path d=\"{d}\" {style}/>");
    }

    pub fn polygon(&mut self, pts: &[(f64, f64)], stroke: &str, fill: &str) {
        self.path(pts, true, &format!("stroke=\"{stroke}\" fill=\"{fill}\" stroke-width=\"1.5\""));
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        self.path(pts, false, &format!("stroke=\"{stroke}\" fill=\"none\" stroke-width=\"{width}\""));
    }

    /// A full line clipped to the viewport.
    pub fn line(&mut self, l: &HLine<f64>, stroke: &str, width: f64) {
        let [a, b, c] = *l.coeffs();
        let (x0, y0, x1, y1) = (self.min.0, self.min.1, self.max.0, self.max.1);
        let mut hits: Vec<(f64, f64)> = Vec::new();
        if b.abs() > 1e-300 {
            for x in [x0, x1] {
                let y = -(a * x + c) / b;
                if y >= y0 && y <= y1 {
                    hits.push((x, y));
                }
            }
        }
        if a.abs() > 1e-300 {
            for y in [y0, y1] {
                let x = -(b * y + c) / a;
                if x >= x0 && x <= x1 {
                    hits.push((x, y));
                }
            }
        }
        hits.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
        if let (Some(&p), Some(&q)) = (hits.first(), hits.last()) {
            self.polyline(&[p, q], stroke, width);
        }
    }

    pub fn point(&mut self, p: &HPoint<f64>, fill: &str, label: Option<&str>) {
        let Some(p) = p.to_affine() else { return };
        if !self.in_range(p) {
            return;
        }
        let (x, y) = self.px(p);
        let _ = writeln!(self.body, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{fill}\"/>");
        if let Some(text) = label {
            let _ = writeln!(
                self.body,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\">{text}</text>",
                x + 5.0,
                y - 5.0
            );
        }
    }

    /// A conic drawn as a sampled polyline, split where it leaves the
    /// drawable range (hyperbola branches, parabola arms).
    pub fn conic(&mut self, c: &Conic<f64>, stroke: &str) {
        let tol = Tolerance::default();
        let Ok(base) = point_on_conic(c, &tol) else { return };
        let m = c.matrix();
        let b = base.coords();
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for k in 0..=CONIC_SAMPLES {
            let phi = std::f64::consts::PI * k as f64 / CONIC_SAMPLES as f64;
            let d = [phi.cos(), phi.sin(), 0.0];
            let dd = linalg::bilinear(&d, m, &d);
            let bd = linalg::bilinear(b, m, &d);
            let p = linalg::sub3(&linalg::scale3(&dd, b), &linalg::scale3(&(2.0 * bd), &d));
            let norm = linalg::norm(&p);
            let pt = if norm == 0.0 || p[2].abs() <= 1e-12 * norm {
                None
            } else {
                Some((p[0] / p[2], p[1] / p[2]))
            };
            match pt {
                Some(q) if self.in_range(q) => runs.last_mut().unwrap().push(q),
                _ => {
                    if !runs.last().unwrap().is_empty() {
                        runs.push(Vec::new());
                    }
                }
            }
        }
        for run in runs {
            self.polyline(&run, stroke, 1.5);
        }
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH:.0}\" height=\"{:.0}\" viewBox=\"0 0 {WIDTH:.2} {:.2}\">\n\
             <rect x=\"0\" y=\"0\" width=\"{WIDTH:.2}\" height=\"{:.2}\" fill=\"white\"/>\n{}</svg>\n",
            self.height,
            self.height,
            self.height,
            self.body
        )
    }
}

pub fn affine_points(pts: &[HPoint<f64>]) -> Vec<(f64, f64)> {
    pts.iter().filter_map(HPoint::to_affine).collect()
}
