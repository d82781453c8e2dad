//! Spanning trees with prescribed degrees via Pruefer sequences.
//!
//! A degree sequence with d(v) >= 1 and sum 2n - 2 is realized by the tree
//! decoded from the Pruefer sequence that lists vertex i exactly d(i) - 1
//! times in ascending order. The initial geometric tree for an instance uses
//! the tightened budgets as red degrees and 1 for every blue point; it may
//! contain crossings, which the swap engine removes afterwards.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeSet};
use std::fmt;

use crate::geom::Segment;
use crate::instance::Instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeError {
    TooFewVertices { n: usize },
    ZeroDegree { vertex: usize },
    BadSum { sum: u64, expected: u64 },
}

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DegreeError::TooFewVertices { n } => {
                write!(f, "a tree needs at least 2 vertices, got {n}")
            }
            DegreeError::ZeroDegree { vertex } => {
                write!(f, "vertex {vertex} has degree 0; tree degrees are at least 1")
            }
            DegreeError::BadSum { sum, expected } => {
                write!(f, "degree sum is {sum}, a tree requires exactly {expected}")
            }
        }
    }
}

impl std::error::Error for DegreeError {}

/// A per-vertex degree prescription summing to 2n - 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    d: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(d: Vec<u32>) -> Result<DegreeSequence, DegreeError> {
        let n = d.len();
        if n < 2 {
            return Err(DegreeError::TooFewVertices { n });
        }
        if let Some(v) = d.iter().position(|&x| x == 0) {
            return Err(DegreeError::ZeroDegree { vertex: v });
        }
        let sum: u64 = d.iter().map(|&x| x as u64).sum();
        let expected = 2 * n as u64 - 2;
        if sum != expected {
            return Err(DegreeError::BadSum { sum, expected });
        }
        Ok(DegreeSequence { d })
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.d
    }
}

/// A spanning tree on vertices 0..n, kept as an ordered edge set plus
/// adjacency lists.
///
/// The two representations stay consistent through every mutation. Edge
/// mutators are crate-internal: only the swap engine rewires trees, and it
/// restores the spanning invariant before returning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoTree {
    n: usize,
    edges: BTreeSet<Segment>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    VertexOutOfRange { edge: (usize, usize), n: usize },
    SelfLoop { vertex: usize },
    DuplicateEdge { edge: (usize, usize) },
    WrongEdgeCount { count: usize, expected: usize },
    Disconnected,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TreeError::VertexOutOfRange { edge: (a, b), n } => {
                write!(f, "edge {a}-{b} references a vertex outside 0..{n}")
            }
            TreeError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            TreeError::DuplicateEdge { edge: (a, b) } => write!(f, "edge {a}-{b} appears twice"),
            TreeError::WrongEdgeCount { count, expected } => {
                write!(f, "{count} edges, a spanning tree has exactly {expected}")
            }
            TreeError::Disconnected => write!(f, "edge set is not connected"),
        }
    }
}

impl std::error::Error for TreeError {}

impl GeoTree {
    /// Builds a tree from an explicit edge list, validating the spanning
    /// tree invariant.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<GeoTree, TreeError> {
        let mut t = GeoTree { n, edges: BTreeSet::new(), adjacency: vec![Vec::new(); n] };
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(TreeError::VertexOutOfRange { edge: (a, b), n });
            }
            if a == b {
                return Err(TreeError::SelfLoop { vertex: a });
            }
            if !t.edges.insert(Segment::new(a, b).normalized()) {
                return Err(TreeError::DuplicateEdge { edge: (a, b) });
            }
            t.adjacency[a].push(b);
            t.adjacency[b].push(a);
        }
        if n == 0 || t.edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                count: t.edges.len(),
                expected: n.saturating_sub(1),
            });
        }
        if !t.is_connected() {
            return Err(TreeError::Disconnected);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending normalized order.
    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains_edge(&self, s: Segment) -> bool {
        self.edges.contains(&s.normalized())
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adjacency[v].len() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adjacency.iter().map(|a| a.len() as u32).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Removes an edge that must be present.
    pub(crate) fn remove_edge(&mut self, s: Segment) {
        let s = s.normalized();
        let was_present = self.edges.remove(&s);
        debug_assert!(was_present, "removing absent edge {s}");
        let (a, b) = s.endpoints();
        self.adjacency[a].retain(|&w| w != b);
        self.adjacency[b].retain(|&w| w != a);
    }

    /// Adds an edge that must be absent.
    pub(crate) fn add_edge(&mut self, s: Segment) {
        let s = s.normalized();
        let was_new = self.edges.insert(s);
        debug_assert!(was_new, "adding duplicate edge {s}");
        let (a, b) = s.endpoints();
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
    }
}

/// Decodes the canonical Pruefer sequence of a degree sequence into a tree
/// with exactly those degrees.
///
/// The sequence lists vertex i exactly d(i) - 1 times in ascending index
/// order; decoding repeatedly attaches the smallest current leaf. Fully
/// deterministic.
pub fn tree_from_degrees(d: &DegreeSequence) -> GeoTree {
    let n = d.n();
    let mut seq = Vec::with_capacity(n - 2);
    for (v, &deg) in d.degrees().iter().enumerate() {
        for _ in 1..deg {
            seq.push(v);
        }
    }
    debug_assert_eq!(seq.len(), n - 2);

    let mut remaining: Vec<u32> = d.degrees().to_vec();
    let mut leaves: BinaryHeap<Reverse<usize>> = remaining
        .iter()
        .enumerate()
        .filter(|&(_, &deg)| deg == 1)
        .map(|(v, _)| Reverse(v))
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let Reverse(leaf) = leaves.pop().expect("valid degree sequence always has a leaf");
        edges.push((leaf, s));
        remaining[leaf] -= 1;
        remaining[s] -= 1;
        if remaining[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    debug_assert!(leaves.is_empty());
    edges.push((a, b));

    let t = GeoTree::from_edges(n, edges).expect("Pruefer decode yields a spanning tree");
    debug_assert_eq!(&t.degrees(), d.degrees());
    t
}

/// Pruefer sequence of a tree: repeatedly strip the smallest leaf and record
/// its neighbor. Inverse of the decoder up to per-vertex multiplicities.
pub fn prufer_encode(t: &GeoTree) -> Vec<usize> {
    let n = t.n();
    assert!(n >= 2);
    let mut deg: Vec<u32> = t.degrees();
    let mut neighbor_sets: Vec<BTreeSet<usize>> =
        (0..n).map(|v| t.neighbors(v).iter().copied().collect()).collect();
    let mut leaves: BinaryHeap<Reverse<usize>> = deg
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == 1)
        .map(|(v, _)| Reverse(v))
        .collect();
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let Reverse(leaf) = leaves.pop().unwrap();
        let &parent = neighbor_sets[leaf].iter().next().unwrap();
        seq.push(parent);
        neighbor_sets[parent].remove(&leaf);
        neighbor_sets[leaf].remove(&parent);
        deg[leaf] -= 1;
        deg[parent] -= 1;
        if deg[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    seq
}

/// Initial tree for an equality-case instance: degree f'(x) at red points,
/// degree 1 at blue points. May contain crossings.
pub fn initial_geo_tree(inst: &Instance, f_prime: &[u32]) -> Result<GeoTree, DegreeError> {
    assert_eq!(f_prime.len(), inst.n_red(), "one tightened budget per red point");
    let mut d = Vec::with_capacity(inst.n());
    d.extend_from_slice(f_prime);
    d.resize(inst.n(), 1);
    let seq = DegreeSequence::new(d)?;
    Ok(tree_from_degrees(&seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::parabola_instance;
    use proptest::prelude::*;

    fn edge_set(t: &GeoTree) -> Vec<(usize, usize)> {
        t.edges().map(|s| s.endpoints()).collect()
    }

    #[test]
    fn two_vertices_single_edge() {
        let d = DegreeSequence::new(vec![1, 1]).unwrap();
        assert_eq!(edge_set(&tree_from_degrees(&d)), vec![(0, 1)]);
    }

    #[test]
    fn star_sequence() {
        let d = DegreeSequence::new(vec![3, 1, 1, 1]).unwrap();
        assert_eq!(edge_set(&tree_from_degrees(&d)), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn path_sequence_decodes_known_tree() {
        // d = [2,2,1,1] has Pruefer sequence (0,1); smallest-leaf decoding
        // gives edges {0,2}, {0,1}, {1,3}.
        let d = DegreeSequence::new(vec![2, 2, 1, 1]).unwrap();
        let t = tree_from_degrees(&d);
        assert_eq!(edge_set(&t), vec![(0, 1), (0, 2), (1, 3)]);
        assert_eq!(t.degrees(), vec![2, 2, 1, 1]);
    }

    #[test]
    fn rejects_single_vertex() {
        assert_eq!(DegreeSequence::new(vec![0]).unwrap_err(), DegreeError::TooFewVertices { n: 1 });
    }

    #[test]
    fn rejects_zero_degree() {
        assert_eq!(
            DegreeSequence::new(vec![0, 2, 2, 2]).unwrap_err(),
            DegreeError::ZeroDegree { vertex: 0 }
        );
    }

    #[test]
    fn rejects_bad_sum() {
        assert_eq!(
            DegreeSequence::new(vec![1, 1, 1]).unwrap_err(),
            DegreeError::BadSum { sum: 3, expected: 4 }
        );
    }

    #[test]
    fn initial_tree_two_blues_is_single_edge() {
        let inst = parabola_instance(&[], 2);
        let t = initial_geo_tree(&inst, &[]).unwrap();
        assert_eq!(edge_set(&t), vec![(0, 1)]);
    }

    #[test]
    fn initial_tree_one_red_three_blues_is_star() {
        let inst = parabola_instance(&[3], 3);
        let t = initial_geo_tree(&inst, &[3]).unwrap();
        assert_eq!(edge_set(&t), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn initial_tree_two_reds_two_blues_is_path_with_blue_ends() {
        let inst = parabola_instance(&[2, 2], 2);
        let t = initial_geo_tree(&inst, &[2, 2]).unwrap();
        assert_eq!(t.degrees(), vec![2, 2, 1, 1]);
        // Degree-valid shape on 4 vertices is forced: a path whose interior
        // is the two reds.
        assert_eq!(edge_set(&t), vec![(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn initial_tree_leaf_set_is_blue_set() {
        let inst = parabola_instance(&[4, 2, 3], 5);
        let t = initial_geo_tree(&inst, &[4, 2, 3]).unwrap();
        for v in 0..inst.n() {
            let is_leaf = t.degree(v) == 1;
            assert_eq!(is_leaf, inst.is_blue(v), "vertex {v}");
        }
    }

    #[test]
    fn from_edges_rejects_cycle() {
        assert_eq!(
            GeoTree::from_edges(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap_err(),
            TreeError::WrongEdgeCount { count: 3, expected: 2 }
        );
    }

    #[test]
    fn from_edges_rejects_disconnected() {
        assert_eq!(
            GeoTree::from_edges(4, vec![(0, 1), (0, 2), (1, 2)]).unwrap_err(),
            TreeError::Disconnected
        );
    }

    #[test]
    fn from_edges_rejects_out_of_range() {
        assert_eq!(
            GeoTree::from_edges(2, vec![(0, 5)]).unwrap_err(),
            TreeError::VertexOutOfRange { edge: (0, 5), n: 2 }
        );
    }

    #[test]
    fn from_edges_rejects_self_loop() {
        assert_eq!(
            GeoTree::from_edges(2, vec![(1, 1)]).unwrap_err(),
            TreeError::SelfLoop { vertex: 1 }
        );
    }

    #[test]
    fn from_edges_rejects_duplicate() {
        assert_eq!(
            GeoTree::from_edges(3, vec![(0, 1), (1, 0)]).unwrap_err(),
            TreeError::DuplicateEdge { edge: (1, 0) }
        );
    }

    /// Any multiset of n - 2 vertex labels is a Pruefer sequence; turning it
    /// into degrees (occurrences + 1) covers every valid degree sequence.
    fn degree_sequence() -> impl Strategy<Value = DegreeSequence> {
        (2usize..=30)
            .prop_flat_map(|n| proptest::collection::vec(0..n, n - 2).prop_map(move |occ| (n, occ)))
            .prop_map(|(n, occ)| {
                let mut d = vec![1u32; n];
                for v in occ {
                    d[v] += 1;
                }
                DegreeSequence::new(d).unwrap()
            })
    }

    proptest! {
        #[test]
        fn realizes_degrees_exactly(d in degree_sequence()) {
            let t = tree_from_degrees(&d);
            prop_assert_eq!(&t.degrees(), d.degrees());
            prop_assert_eq!(t.edge_count(), d.n() - 1);
            prop_assert!(t.is_connected());
        }

        #[test]
        fn encode_has_matching_multiplicities(d in degree_sequence()) {
            let t = tree_from_degrees(&d);
            let seq = prufer_encode(&t);
            let mut occ = vec![0u32; d.n()];
            for v in seq {
                occ[v] += 1;
            }
            for (v, &deg) in d.degrees().iter().enumerate() {
                prop_assert_eq!(occ[v] + 1, deg, "vertex {}", v);
            }
        }
    }
}
