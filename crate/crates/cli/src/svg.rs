//! SVG panels on a fixed 800×800 canvas.
//!
//! All panels share one scale so shapes can be compared by eye; the scale
//! factor is printed at the bottom of the image.

use std::fmt::Write;

use steinsym::{Point, Polygon};

pub const SIZE: f64 = 800.0;
const MARGIN: f64 = 24.0;
const FOOTER: f64 = 28.0;

/// One panel: closed polygons and open polylines under a title.
#[derive(Clone, Debug, Default)]
pub struct Panel {
    pub title: String,
    pub polygons: Vec<Polygon>,
    pub polylines: Vec<Vec<Point>>,
}

impl Panel {
    pub fn new(title: impl Into<String>) -> Self {
        Panel {
            title: title.into(),
            ..Panel::default()
        }
    }

    pub fn polygon(mut self, p: Polygon) -> Self {
        self.polygons.push(p);
        self
    }

    pub fn polyline(mut self, pts: Vec<Point>) -> Self {
        self.polylines.push(pts);
        self
    }

    fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.polygons
            .iter()
            .flat_map(|p| p.vertices().iter().copied())
            .chain(self.polylines.iter().flatten().copied())
    }
}

/// Input and output side by side.
pub fn side_by_side(left: Panel, right: Panel) -> String {
    grid(&[left, right], 2)
}

/// Panels in rows of `cols`, sharing one scale that fits every panel. The
/// origin is always in view so the axes can be drawn.
pub fn grid(panels: &[Panel], cols: usize) -> String {
    let cols = cols.max(1).min(panels.len().max(1));
    let rows = panels.len().div_ceil(cols).max(1);
    let cell_w = SIZE / cols as f64;
    let cell_h = (SIZE - FOOTER) / rows as f64;

    // Extent about the origin in each direction, common to all panels.
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for z in panels.iter().flat_map(Panel::points) {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let w = (x1 - x0).max(1e-12);
    let h = (y1 - y0).max(1e-12);
    let scale = ((cell_w - 2.0 * MARGIN) / w).min((cell_h - 2.0 * MARGIN - 16.0) / h);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for (k, panel) in panels.iter().enumerate() {
        let (cx, cy) = ((k % cols) as f64 * cell_w, (k / cols) as f64 * cell_h);
        // Center the common extent in the cell; y grows downwards in SVG.
        let ox = cx + 0.5 * cell_w - 0.5 * (x0 + x1) * scale;
        let oy = cy + 16.0 + 0.5 * (cell_h - 16.0) + 0.5 * (y0 + y1) * scale;
        let tx = |z: Point| (ox + z.re * scale, oy - z.im * scale);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13">{}</text>"#,
            cx + 8.0,
            cy + 16.0,
            escape(&panel.title)
        );
        let (ax0, _) = tx(Point::new(x0, 0.0));
        let (ax1, ay) = tx(Point::new(x1, 0.0));
        let (bx, by0) = tx(Point::new(0.0, y0));
        let (_, by1) = tx(Point::new(0.0, y1));
        let _ = writeln!(
            s,
            r##"<g stroke="#999" stroke-width="0.7"><line x1="{ax0:.2}" y1="{ay:.2}" x2="{ax1:.2}" y2="{ay:.2}"/><line x1="{bx:.2}" y1="{by0:.2}" x2="{bx:.2}" y2="{by1:.2}"/></g>"##
        );
        for p in &panel.polygons {
            let d = p
                .vertices()
                .iter()
                .map(|&z| {
                    let (x, y) = tx(z);
                    format!("{x:.2},{y:.2}")
                })
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                s,
                r##"<polygon points="{d}" fill="#4a7fb5" fill-opacity="0.25" stroke="#1f4e79" stroke-width="1"/>"##
            );
        }
        for line in &panel.polylines {
            let d = line
                .iter()
                .map(|&z| {
                    let (x, y) = tx(z);
                    format!("{x:.2},{y:.2}")
                })
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                s,
                r##"<polyline points="{d}" fill="none" stroke="#b5534a" stroke-width="0.8"/>"##
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="8" y="{:.1}" font-family="sans-serif" font-size="12">scale: 1 unit = {:.4} px</text>"#,
        SIZE - 10.0,
        scale
    );
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
