//! Crossing elimination by degree-preserving edge swaps.
//!
//! A properly crossing pair of tree edges falls into one of three classes by
//! how many blue endpoints it touches. Each class admits a swap that removes
//! the two crossing edges, reconnects the resulting three components with
//! two edges on the same four vertices, preserves every vertex degree, and
//! strictly decreases total length. Repeating until no crossing remains must
//! terminate: true lengths descend over a finite set of trees. No float
//! comparison ever picks a move; control flow is exact.

use std::fmt;

use crate::geom::{euclid_length, properly_cross, total_length, Segment};
use crate::instance::{check_feasibility, reduce_budget, FeasibilityReport, Instance};
use crate::tree::{initial_geo_tree, GeoTree};

/// Color pattern of a crossing pair's four endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseClass {
    /// Both edges red-red.
    AllRed,
    /// Exactly one endpoint blue.
    OneBlue,
    /// One blue endpoint on each edge.
    TwoBlue,
}

impl CaseClass {
    /// Stable tag naming the endpoint colors, for reports and traces.
    pub fn tag(self) -> &'static str {
        match self {
            CaseClass::AllRed => "RRRR",
            CaseClass::OneBlue => "RRRB",
            CaseClass::TwoBlue => "RBRB",
        }
    }
}

/// A properly crossing pair of tree edges, classified. e1 < e2 in normalized
/// order and the edges share no endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingEvent {
    pub e1: Segment,
    pub e2: Segment,
    pub case_class: CaseClass,
}

/// One applied swap. The added pair covers the same four vertices as the
/// removed pair, so per-vertex degrees are unchanged.
#[derive(Clone, Copy, Debug)]
pub struct SwapRecord {
    pub removed: [Segment; 2],
    pub added: [Segment; 2],
    pub case_class: CaseClass,
    /// Total length of added minus removed; negative for every swap.
    pub length_delta: f64,
}

/// Record of a full uncrossing run.
#[derive(Clone, Debug, Default)]
pub struct UncrossTrace {
    pub swaps: Vec<SwapRecord>,
    pub initial_length: f64,
    pub final_length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UncrossError {
    /// More swaps than the cap allows; a bug signal, since the descent
    /// argument guarantees termination.
    IterationCapExceeded { cap: u64 },
}

impl fmt::Display for UncrossError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            UncrossError::IterationCapExceeded { cap } => {
                write!(f, "crossing elimination exceeded the cap of {cap} swaps")
            }
        }
    }
}

impl std::error::Error for UncrossError {}

/// First properly crossing edge pair in lexicographic order over the sorted
/// edge list, classified by endpoint colors; None iff the tree is
/// non-crossing. All-pairs scan.
pub fn find_crossing(t: &GeoTree, inst: &Instance) -> Option<CrossingEvent> {
    let pts = inst.points();
    let edges: Vec<Segment> = t.edges().collect();
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            if properly_cross(e1, e2, pts) {
                return Some(classify(e1, e2, inst));
            }
        }
    }
    None
}

fn classify(e1: Segment, e2: Segment, inst: &Instance) -> CrossingEvent {
    let blues_on = |s: Segment| inst.is_blue(s.a()) as u32 + inst.is_blue(s.b()) as u32;
    let (b1, b2) = (blues_on(e1), blues_on(e2));
    // A blue-blue edge exists only in the two-point tree, which has nothing
    // to cross.
    assert!(b1 <= 1 && b2 <= 1, "crossing edge with two blue endpoints");
    let case_class = match b1 + b2 {
        0 => CaseClass::AllRed,
        1 => CaseClass::OneBlue,
        2 => CaseClass::TwoBlue,
        _ => unreachable!(),
    };
    CrossingEvent { e1, e2, case_class }
}

/// Labels the exactly-three connected components of the tree minus two of
/// its edges. Labels are assigned 0, 1, 2 in order of lowest contained
/// vertex.
pub fn component_split(t: &GeoTree, e1: Segment, e2: Segment) -> Vec<u8> {
    let e1 = e1.normalized();
    let e2 = e2.normalized();
    assert!(e1 != e2, "need two distinct edges");
    assert!(t.contains_edge(e1) && t.contains_edge(e2), "edges must belong to the tree");
    let cut = |v: usize, w: usize| {
        let s = Segment::new(v, w).normalized();
        s == e1 || s == e2
    };
    const UNLABELED: u8 = u8::MAX;
    let mut label = vec![UNLABELED; t.n()];
    let mut next = 0u8;
    for start in 0..t.n() {
        if label[start] != UNLABELED {
            continue;
        }
        assert!(next < 3, "cutting two tree edges leaves exactly three components");
        label[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in t.neighbors(v) {
                if label[w] == UNLABELED && !cut(v, w) {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    assert_eq!(next, 3, "cutting two tree edges leaves exactly three components");
    label
}

/// Applies the swap for a crossing event, mutating the tree. Returns the
/// record of what changed.
///
/// Panics if no candidate reconnection restores a tree; the three-component
/// structure guarantees one always does, so that indicates a bug.
pub fn apply_swap(t: &mut GeoTree, ev: &CrossingEvent, inst: &Instance) -> SwapRecord {
    let pts = inst.points();
    let (add1, add2) = match ev.case_class {
        CaseClass::AllRed => {
            // Edges st and uv, four red endpoints. Exactly one of the two
            // degree-preserving re-pairings reconnects the three components.
            let (s, tt) = ev.e1.endpoints();
            let (u, v) = ev.e2.endpoints();
            let label = component_split(t, ev.e1, ev.e2);
            let reconnects = |x: usize, y: usize, p: usize, q: usize| {
                label[x] != label[y]
                    && label[p] != label[q]
                    && !(label[x] == label[p] && label[y] == label[q])
                    && !(label[x] == label[q] && label[y] == label[p])
            };
            if reconnects(s, u, v, tt) {
                (Segment::new(s, u), Segment::new(v, tt))
            } else {
                assert!(
                    reconnects(s, v, u, tt),
                    "one of the two candidate re-pairings must reconnect"
                );
                (Segment::new(s, v), Segment::new(u, tt))
            }
        }
        CaseClass::OneBlue => {
            // Edges st (red-red) and ux with x blue. x is alone in its
            // component; u sits with either s or t and pairs with the other.
            let e2_has_blue = inst.is_blue(ev.e2.a()) || inst.is_blue(ev.e2.b());
            let (red_edge, mixed) = if e2_has_blue { (ev.e1, ev.e2) } else { (ev.e2, ev.e1) };
            let (s, tt) = red_edge.endpoints();
            let (u, x) = if inst.is_blue(mixed.a()) {
                (mixed.b(), mixed.a())
            } else {
                (mixed.a(), mixed.b())
            };
            let label = component_split(t, red_edge, mixed);
            debug_assert!(label[x] != label[u], "blue leaf is isolated by the cut");
            if label[u] == label[tt] {
                (Segment::new(s, u), Segment::new(tt, x))
            } else {
                assert!(label[u] == label[s], "u lies with s or with t");
                (Segment::new(u, tt), Segment::new(s, x))
            }
        }
        CaseClass::TwoBlue => {
            // Edges sy and ux with y, x blue. Both blues are isolated by the
            // cut; crossing them over is the unique tree reconnection.
            let (s, y) = split_red_blue(ev.e1, inst);
            let (u, x) = split_red_blue(ev.e2, inst);
            (Segment::new(s, x), Segment::new(u, y))
        }
    };

    let before = euclid_length(ev.e1, pts) + euclid_length(ev.e2, pts);
    let after = euclid_length(add1, pts) + euclid_length(add2, pts);
    // True lengths strictly decrease; the tolerance only absorbs float
    // evaluation error of that real inequality.
    debug_assert!(after < before * (1.0 + 1e-9));

    t.remove_edge(ev.e1);
    t.remove_edge(ev.e2);
    t.add_edge(add1);
    t.add_edge(add2);
    debug_assert!(t.is_connected(), "swap must reconnect the tree");

    SwapRecord {
        removed: [ev.e1.normalized(), ev.e2.normalized()],
        added: [add1.normalized(), add2.normalized()],
        case_class: ev.case_class,
        length_delta: after - before,
    }
}

fn split_red_blue(e: Segment, inst: &Instance) -> (usize, usize) {
    if inst.is_blue(e.a()) {
        (e.b(), e.a())
    } else {
        debug_assert!(inst.is_blue(e.b()));
        (e.a(), e.b())
    }
}

/// Swaps away crossings until none remain, recording every step.
pub fn uncross(
    t: &mut GeoTree,
    inst: &Instance,
    max_iters: u64,
) -> Result<UncrossTrace, UncrossError> {
    let pts = inst.points();
    let initial_length = total_length(t.edges(), pts);
    let mut swaps = Vec::new();
    while let Some(ev) = find_crossing(t, inst) {
        if swaps.len() as u64 >= max_iters {
            return Err(UncrossError::IterationCapExceeded { cap: max_iters });
        }
        swaps.push(apply_swap(t, &ev, inst));
    }
    let final_length = total_length(t.edges(), pts);
    Ok(UncrossTrace { swaps, initial_length, final_length })
}

/// Default swap cap, 10 n^3. Observed swap counts sit far below it; hitting
/// the cap means a bug, not a hard instance.
pub fn default_max_iters(n: usize) -> u64 {
    10u64.saturating_mul((n as u64).saturating_pow(3))
}

/// A solved instance: the final non-crossing tree, the tightened budgets it
/// realizes, and the swap trace that produced it.
#[derive(Clone, Debug)]
pub struct Solution {
    pub tree: GeoTree,
    pub f_prime: Vec<u32>,
    pub trace: UncrossTrace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveError {
    Infeasible(FeasibilityReport),
    IterationCapExceeded { cap: u64 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SolveError::Infeasible(report) => {
                write!(
                    f,
                    "infeasible: {} blue points against bound {} (slack {})",
                    report.blue_count,
                    report.bound(),
                    report.slack
                )
            }
            SolveError::IterationCapExceeded { cap } => {
                write!(f, "crossing elimination exceeded the cap of {cap} swaps")
            }
        }
    }
}

impl std::error::Error for SolveError {}

/// Full pipeline: feasibility check, budget tightening, degree-exact initial
/// tree, crossing elimination.
///
/// The returned tree is non-crossing and spanning, its leaves are exactly
/// the blue points, and red degrees equal the tightened budgets, hence lie
/// in [2, f(x)]. With zero slack the tightened budgets are the original
/// ones, so red degrees equal f exactly.
pub fn solve(inst: &Instance, max_iters: Option<u64>) -> Result<Solution, SolveError> {
    let report = check_feasibility(inst);
    if !report.is_feasible() {
        return Err(SolveError::Infeasible(report));
    }
    let f_prime = reduce_budget(inst);
    let mut tree = initial_geo_tree(inst, &f_prime)
        .expect("feasible tightened budgets always form a valid degree sequence");
    let cap = max_iters.unwrap_or_else(|| default_max_iters(inst.n()));
    let trace = uncross(&mut tree, inst, cap).map_err(|e| match e {
        UncrossError::IterationCapExceeded { cap } => SolveError::IterationCapExceeded { cap },
    })?;
    Ok(Solution { tree, f_prime, trace })
}
