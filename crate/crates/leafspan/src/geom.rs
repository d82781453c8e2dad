//! Exact planar predicates and length helpers over integer-coordinate points.
//!
//! Every predicate here is evaluated in integer arithmetic and is exact; the
//! only floating-point code is [`euclid_length`], which exists for reporting
//! and test assertions and never drives a control-flow decision.

use std::collections::HashMap;
use std::fmt;

/// Largest coordinate magnitude accepted anywhere in the library.
///
/// With |x|, |y| <= 2^30 the orientation determinant is bounded by 2^63 in
/// magnitude, so evaluating it in `i128` is exact with ample headroom.
pub const MAX_COORD: i64 = 1 << 30;

/// Factor between user-facing decimal coordinates and internal integers.
///
/// Inputs carry at most six fractional digits, so multiplying by 10^6 maps
/// them to exact integers; lengths divide back out for reporting.
pub const COORD_SCALE: i64 = 1_000_000;

/// A point with exact integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint {
    pub x: i64,
    pub y: i64,
}

impl ExactPoint {
    pub fn new(x: i64, y: i64) -> Self {
        ExactPoint { x, y }
    }

    /// Whether both coordinates are within [`MAX_COORD`] in magnitude.
    pub fn in_bounds(self) -> bool {
        self.x.abs() <= MAX_COORD && self.y.abs() <= MAX_COORD
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An edge between two vertex indices of a point array.
///
/// The two indices are always distinct; `new` rejects degenerate segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    a: usize,
    b: usize,
}

impl Segment {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "degenerate segment: both endpoints are vertex {a}");
        Segment { a, b }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// The same segment with endpoints in ascending index order.
    pub fn normalized(self) -> Self {
        if self.a <= self.b {
            self
        } else {
            Segment { a: self.b, b: self.a }
        }
    }

    pub fn shares_endpoint(self, other: Segment) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Sign of the cross product (q - p) x (r - p).
///
/// +1 is a left turn, -1 a right turn, 0 collinear. Exact for all points
/// within the [`MAX_COORD`] bound.
pub fn orientation(p: ExactPoint, q: ExactPoint, r: ExactPoint) -> i32 {
    debug_assert!(p.in_bounds() && q.in_bounds() && r.in_bounds());
    let lhs = (q.x as i128 - p.x as i128) * (r.y as i128 - p.y as i128);
    let rhs = (q.y as i128 - p.y as i128) * (r.x as i128 - p.x as i128);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// True iff the open segments intersect at a point interior to both.
///
/// Segments sharing an endpoint never properly cross, and under general
/// position they cannot touch anywhere else either, so the answer is decided
/// purely by the four orientation signs with no boundary cases.
pub fn properly_cross(s1: Segment, s2: Segment, pts: &[ExactPoint]) -> bool {
    if s1.shares_endpoint(s2) {
        return false;
    }
    let (p1, q1) = (pts[s1.a], pts[s1.b]);
    let (p2, q2) = (pts[s2.a], pts[s2.b]);
    let d1 = orientation(p1, q1, p2);
    let d2 = orientation(p1, q1, q2);
    if d1 * d2 >= 0 {
        return false;
    }
    let d3 = orientation(p2, q2, p1);
    let d4 = orientation(p2, q2, q1);
    d3 * d4 < 0
}

/// Witness returned when a point set is not in general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionViolation {
    Duplicate { i: usize, j: usize },
    Collinear { i: usize, j: usize, k: usize },
}

impl fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PositionViolation::Duplicate { i, j } => {
                write!(f, "points {i} and {j} coincide")
            }
            PositionViolation::Collinear { i, j, k } => {
                write!(f, "points {i}, {j}, {k} are collinear")
            }
        }
    }
}

impl std::error::Error for PositionViolation {}

/// Checks that all points are distinct and no three are collinear.
///
/// Returns the first witnessing duplicate pair or collinear triple in index
/// order. The all-triples scan is cubic, which is fine at the input sizes
/// this library targets.
pub fn validate_general_position(pts: &[ExactPoint]) -> Result<(), PositionViolation> {
    let mut seen: HashMap<(i64, i64), usize> = HashMap::with_capacity(pts.len());
    for (j, p) in pts.iter().enumerate() {
        if let Some(&i) = seen.get(&(p.x, p.y)) {
            return Err(PositionViolation::Duplicate { i, j });
        }
        seen.insert((p.x, p.y), j);
    }
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(pts[i], pts[j], pts[k]) == 0 {
                    return Err(PositionViolation::Collinear { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Euclidean length of a segment as a double.
///
/// Reporting and assertions only; the solver never compares lengths to pick
/// a move.
pub fn euclid_length(s: Segment, pts: &[ExactPoint]) -> f64 {
    let p = pts[s.a];
    let q = pts[s.b];
    let dx = (q.x - p.x) as f64;
    let dy = (q.y - p.y) as f64;
    (dx * dx + dy * dy).sqrt()
}

/// Sum of segment lengths.
pub fn total_length<I: IntoIterator<Item = Segment>>(segments: I, pts: &[ExactPoint]) -> f64 {
    segments.into_iter().map(|s| euclid_length(s, pts)).sum()
}
