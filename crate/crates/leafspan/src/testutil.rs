//! Helpers shared by unit tests across modules.

use crate::geom::ExactPoint;
use crate::instance::Instance;

/// Points on a parabola are pairwise distinct and have no collinear triple,
/// so they form a valid instance for any color split.
pub(crate) fn parabola_points(n: usize) -> Vec<ExactPoint> {
    (0..n as i64).map(|i| ExactPoint::new(i, i * i)).collect()
}

pub(crate) fn parabola_instance(f: &[u32], n_blue: usize) -> Instance {
    let pts = parabola_points(f.len() + n_blue);
    let red = f.iter().zip(&pts).map(|(&b, &p)| (p, b)).collect();
    let blue = pts[f.len()..].to_vec();
    Instance::new(red, blue).unwrap()
}
