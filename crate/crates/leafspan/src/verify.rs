//! Independent solution checking and an exhaustive small-instance oracle.
//!
//! The verifier works from a raw edge list and the geometric predicates
//! alone, sharing no bookkeeping with the solver, so it cannot inherit a
//! solver bug. The oracle enumerates every spanning tree whose degrees fit
//! the instance (blue leaves, red degrees within budget) for n at most 9 and
//! partitions them by the crossing predicate; a feasible instance must
//! always own at least one non-crossing member.

use std::fmt;

use crate::geom::{properly_cross, Segment};
use crate::instance::{check_feasibility, Instance};
use crate::tree::GeoTree;

/// Disjoint-set forest with path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False iff the two were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// A red vertex whose tree degree leaves [2, f(x)]. `bound` is the violated
/// end: 2 when the degree is too small, f(x) when too large.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub degree: u32,
    pub bound: u32,
}

/// Outcome of all solution checks. Failures are content, not errors.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Right edge count, no duplicates, acyclic and connected.
    pub is_spanning_tree: bool,
    /// Properly crossing edge pairs; must be empty.
    pub crossing_pairs: Vec<(Segment, Segment)>,
    /// The degree-1 vertices are exactly the blue points.
    pub leaf_set_equals_blue: bool,
    /// Red vertices outside [2, f(x)].
    pub degree_violations: Vec<DegreeViolation>,
    /// With zero slack, red degrees must equal f exactly; vacuously true
    /// otherwise.
    pub equality_degrees_ok: bool,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.is_spanning_tree
            && self.crossing_pairs.is_empty()
            && self.leaf_set_equals_blue
            && self.degree_violations.is_empty()
            && self.equality_degrees_ok
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spanning_tree: {}", if self.is_spanning_tree { "ok" } else { "FAIL" })?;
        writeln!(
            f,
            "crossings: {}",
            if self.crossing_pairs.is_empty() {
                "none".to_string()
            } else {
                format!("{} pair(s), first {} x {}", self.crossing_pairs.len(),
                    self.crossing_pairs[0].0, self.crossing_pairs[0].1)
            }
        )?;
        writeln!(f, "leaf_set: {}", if self.leaf_set_equals_blue { "ok" } else { "FAIL" })?;
        writeln!(
            f,
            "degree_bounds: {}",
            if self.degree_violations.is_empty() {
                "ok".to_string()
            } else {
                let v = self.degree_violations[0];
                format!(
                    "{} violation(s), first at vertex {} (degree {}, bound {})",
                    self.degree_violations.len(),
                    v.vertex,
                    v.degree,
                    v.bound
                )
            }
        )?;
        writeln!(f, "equality_degrees: {}", if self.equality_degrees_ok { "ok" } else { "FAIL" })?;
        write!(f, "verdict: {}", if self.passes() { "pass" } else { "fail" })
    }
}

/// Checks a raw edge list against an instance. Never panics on malformed
/// input: out-of-range or degenerate edges fail the spanning-tree check and
/// are excluded from the geometric scans.
pub fn verify(inst: &Instance, edges: &[(usize, usize)]) -> VerifyReport {
    let n = inst.n();
    let pts = inst.points();
    let structurally_sound = edges.iter().all(|&(a, b)| a < n && b < n && a != b);
    let segs: Vec<Segment> = edges
        .iter()
        .filter(|&&(a, b)| a < n && b < n && a != b)
        .map(|&(a, b)| Segment::new(a, b).normalized())
        .collect();

    let mut is_spanning_tree = structurally_sound && edges.len() + 1 == n;
    if is_spanning_tree {
        let mut uf = UnionFind::new(n);
        for &s in &segs {
            if !uf.union(s.a(), s.b()) {
                is_spanning_tree = false;
                break;
            }
        }
        // n - 1 edges and no cycle force connectivity.
    }

    let mut crossing_pairs = Vec::new();
    for (i, &e1) in segs.iter().enumerate() {
        for &e2 in &segs[i + 1..] {
            if properly_cross(e1, e2, pts) {
                crossing_pairs.push((e1, e2));
            }
        }
    }

    let mut deg = vec![0u32; n];
    for &s in &segs {
        deg[s.a()] += 1;
        deg[s.b()] += 1;
    }
    let leaf_set_equals_blue = (0..n).all(|v| (deg[v] == 1) == inst.is_blue(v));

    let mut degree_violations = Vec::new();
    for (v, &d) in deg.iter().enumerate().take(inst.n_red()) {
        let f = inst.budget(v);
        if d < 2 {
            degree_violations.push(DegreeViolation { vertex: v, degree: d, bound: 2 });
        } else if d > f {
            degree_violations.push(DegreeViolation { vertex: v, degree: d, bound: f });
        }
    }

    let report = check_feasibility(inst);
    let equality_degrees_ok = if report.is_feasible() && report.slack == 0 {
        (0..inst.n_red()).all(|v| deg[v] == inst.budget(v))
    } else {
        true
    };

    VerifyReport {
        is_spanning_tree,
        crossing_pairs,
        leaf_set_equals_blue,
        degree_violations,
        equality_degrees_ok,
    }
}

/// Convenience wrapper over a tree value.
pub fn verify_tree(inst: &Instance, t: &GeoTree) -> VerifyReport {
    let edges: Vec<(usize, usize)> = t.edges().map(|s| s.endpoints()).collect();
    verify(inst, &edges)
}

/// Largest instance the exhaustive oracle accepts.
pub const ORACLE_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { n: usize },
    Infeasible,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OracleError::TooLarge { n } => {
                write!(f, "oracle handles at most {ORACLE_MAX_N} points, got {n}")
            }
            OracleError::Infeasible => write!(f, "oracle requires a feasible instance"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Every spanning tree whose degrees fit the instance, as sorted normalized
/// edge lists, split by the crossing predicate.
#[derive(Clone, Debug, Default)]
pub struct TreeEnumeration {
    pub degree_valid: Vec<Vec<(usize, usize)>>,
    pub non_crossing: Vec<Vec<(usize, usize)>>,
}

impl TreeEnumeration {
    pub fn crossing_count(&self) -> usize {
        self.degree_valid.len() - self.non_crossing.len()
    }

    pub fn non_crossing_contains(&self, edges: &[(usize, usize)]) -> bool {
        let key = normalize_edge_list(edges);
        self.non_crossing.contains(&key)
    }
}

fn normalize_edge_list(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> =
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v
}

/// Exhaustively enumerates the degree-valid spanning trees of a small
/// instance.
///
/// Walks the Pruefer sequences directly: a tree has blue leaves and red
/// degrees in [2, f(x)] exactly when blue labels never appear and red label
/// x appears between 1 and f(x) - 1 times, so the walk only descends into
/// sequences meeting those occurrence budgets. Instances with fewer than two
/// points have no spanning tree and yield an empty enumeration.
pub fn enumerate_feasible_trees(inst: &Instance) -> Result<TreeEnumeration, OracleError> {
    let n = inst.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge { n });
    }
    let mut out = TreeEnumeration::default();
    if n < 2 {
        return Ok(out);
    }
    let n_red = inst.n_red();
    let len = n - 2;
    let max_occ: Vec<usize> =
        (0..n_red).map(|v| inst.budget(v) as usize - 1).collect();
    let mut seq = vec![0usize; len];
    let mut used = vec![0usize; n_red];
    // Reds that still must appear at least once.
    let mut still_needed = n_red;
    let mut scratch = DecodeScratch::new(n);

    // Recursive walker threads all mutable state explicitly.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        pos: usize,
        seq: &mut [usize],
        used: &mut [usize],
        still_needed: &mut usize,
        max_occ: &[usize],
        inst: &Instance,
        scratch: &mut DecodeScratch,
        out: &mut TreeEnumeration,
    ) {
        let len = seq.len();
        if pos == len {
            if *still_needed == 0 {
                record(seq, inst, scratch, out);
            }
            return;
        }
        let slots_after = len - pos - 1;
        for v in 0..max_occ.len() {
            if used[v] >= max_occ[v] {
                continue;
            }
            let first_use = used[v] == 0;
            let needed_after = *still_needed - usize::from(first_use);
            if needed_after > slots_after {
                continue;
            }
            seq[pos] = v;
            used[v] += 1;
            *still_needed = needed_after;
            walk(pos + 1, seq, used, still_needed, max_occ, inst, scratch, out);
            used[v] -= 1;
            *still_needed = needed_after + usize::from(first_use);
        }
    }

    if still_needed <= len {
        walk(0, &mut seq, &mut used, &mut still_needed, &max_occ, inst, &mut scratch, &mut out);
    }
    Ok(out)
}

struct DecodeScratch {
    n: usize,
    work: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl DecodeScratch {
    fn new(n: usize) -> Self {
        DecodeScratch { n, work: vec![0; n], edges: Vec::with_capacity(n.saturating_sub(1)) }
    }
}

/// Decodes one Pruefer sequence (smallest-leaf rule) and files the tree.
fn record(seq: &[usize], inst: &Instance, scratch: &mut DecodeScratch, out: &mut TreeEnumeration) {
    let n = scratch.n;
    let work = &mut scratch.work;
    work.fill(1);
    for &v in seq {
        work[v] += 1;
    }
    let edges = &mut scratch.edges;
    edges.clear();
    for &s in seq {
        let leaf = (0..n).find(|&u| work[u] == 1).expect("decode always has a leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        work[leaf] = 0;
        work[s] -= 1;
    }
    let mut tail = (0..n).filter(|&u| work[u] == 1);
    let a = tail.next().unwrap();
    let b = tail.next().unwrap();
    edges.push((a, b));
    edges.sort_unstable();

    let pts = inst.points();
    let segs: Vec<Segment> = edges.iter().map(|&(a, b)| Segment::new(a, b)).collect();
    let mut crossing = false;
    'scan: for (i, &e1) in segs.iter().enumerate() {
        for &e2 in &segs[i + 1..] {
            if properly_cross(e1, e2, pts) {
                crossing = true;
                break 'scan;
            }
        }
    }
    out.degree_valid.push(edges.clone());
    if !crossing {
        out.non_crossing.push(edges.clone());
    }
}

/// True iff at least one degree-valid non-crossing tree exists. For a
/// feasible general-position instance this must always hold; false is a
/// severe bug signal.
pub fn oracle_check(inst: &Instance) -> Result<bool, OracleError> {
    if inst.n() > ORACLE_MAX_N {
        return Err(OracleError::TooLarge { n: inst.n() });
    }
    if !check_feasibility(inst).is_feasible() {
        return Err(OracleError::Infeasible);
    }
    Ok(!enumerate_feasible_trees(inst)?.non_crossing.is_empty())
}
