//! Deterministic SVG rendering of fixed-line arrangements. Exact directions
//! are deduplicated before any float conversion; floats appear only in the
//! emitted coordinates.

use revmap_core::{Scalar, SubspaceBasis};

const VIEW: f64 = 5.0; // world coordinates span [-5, 5]^2
const SIZE: f64 = 500.0;

fn px(x: f64) -> f64 {
    (x + VIEW) * (SIZE / (2.0 * VIEW))
}

fn py(y: f64) -> f64 {
    (VIEW - y) * (SIZE / (2.0 * VIEW))
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

/// A line through the origin with a label, plus styling class.
pub struct PlotLine {
    pub direction: (f64, f64),
    pub label: String,
    pub dashed: bool,
}

pub fn line_from_subspace(space: &SubspaceBasis, label: String, dashed: bool) -> PlotLine {
    let v = &space.basis()[0];
    PlotLine {
        direction: (v[0].to_f64(), v[1].to_f64()),
        label,
        dashed,
    }
}

/// Endpoints of the full line through the origin clipped to the viewport.
fn clip_endpoints(dx: f64, dy: f64) -> ((f64, f64), (f64, f64)) {
    let scale = VIEW / dx.abs().max(dy.abs()).max(f64::MIN_POSITIVE);
    ((scale * dx, scale * dy), (-scale * dx, -scale * dy))
}

pub struct SvgDocument {
    body: String,
}

impl SvgDocument {
    pub fn new() -> Self {
        let mut body = String::new();
        body.push_str(&format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" \
             height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
        ));
        body.push_str(&format!(
            "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
        ));
        // Light coordinate axes.
        body.push_str(&format!(
            "  <line class=\"axis\" x1=\"0\" y1=\"{m}\" x2=\"{SIZE}\" y2=\"{m}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            m = SIZE / 2.0
        ));
        body.push_str(&format!(
            "  <line class=\"axis\" x1=\"{m}\" y1=\"0\" x2=\"{m}\" y2=\"{SIZE}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            m = SIZE / 2.0
        ));
        SvgDocument { body }
    }

    pub fn add_line(&mut self, line: &PlotLine) {
        let (a, b) = clip_endpoints(line.direction.0, line.direction.1);
        let (class, stroke, dash) = if line.dashed {
            ("invariant-line", "#cc0000", " stroke-dasharray=\"8 5\"")
        } else {
            ("fix-line", "#1f4e9c", "")
        };
        self.body.push_str(&format!(
            "  <line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>\n",
            fmt(px(a.0)),
            fmt(py(a.1)),
            fmt(px(b.0)),
            fmt(py(b.1)),
        ));
        // Label near the positive end, nudged inward.
        let lx = px(a.0 * 0.82);
        let ly = py(a.1 * 0.82);
        self.body.push_str(&format!(
            "  <text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#333333\">{}</text>\n",
            fmt(lx),
            fmt(ly),
            xml_escape(&line.label)
        ));
    }

    pub fn add_orbit(&mut self, points: &[Vec<Scalar>]) {
        let coords: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p[0].to_f64(), p[1].to_f64()))
            .collect();
        let path: Vec<String> = coords
            .iter()
            .map(|(x, y)| format!("{},{}", fmt(px(*x)), fmt(py(*y))))
            .collect();
        self.body.push_str(&format!(
            "  <polyline class=\"orbit\" points=\"{}\" fill=\"none\" stroke=\"#2c8a2c\" stroke-width=\"1\"/>\n",
            path.join(" ")
        ));
        for (x, y) in &coords {
            self.body.push_str(&format!(
                "  <circle class=\"orbit-point\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#2c8a2c\"/>\n",
                fmt(px(*x)),
                fmt(py(*y))
            ));
        }
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
