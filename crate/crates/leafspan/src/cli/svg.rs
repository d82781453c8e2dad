//! Plain SVG rendering of an instance and its tree.

use crate::geom::COORD_SCALE;
use crate::instance::Instance;

/// Renders the point set and edge list. Red points are filled discs, blue
/// points hollow circles; edges draw first so markers sit on top. The view
/// box is the bounding box padded by 5% per axis.
pub fn render(inst: &Instance, edges: &[(usize, usize)]) -> String {
    let scale = COORD_SCALE as f64;
    let pts: Vec<(f64, f64)> =
        inst.points().iter().map(|p| (p.x as f64 / scale, p.y as f64 / scale)).collect();

    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    if pts.is_empty() {
        (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
    }
    let pad_x = 0.05 * (max_x - min_x).max(1.0);
    let pad_y = 0.05 * (max_y - min_y).max(1.0);
    let view = format!(
        "{} {} {} {}",
        min_x - pad_x,
        min_y - pad_y,
        (max_x - min_x) + 2.0 * pad_x,
        (max_y - min_y) + 2.0 * pad_y
    );

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\">\n"
    ));
    for &(a, b) in edges {
        let (x1, y1) = pts[a];
        let (x2, y2) = pts[b];
        out.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for (v, &(x, y)) in pts.iter().enumerate() {
        if inst.is_red(v) {
            out.push_str(&format!(
                "  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"#d62728\"/>\n"
            ));
        } else {
            out.push_str(&format!(
                "  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
