//! Bicolored problem instances with per-red-point degree budgets.
//!
//! An instance is a set of red and blue points in general position together
//! with a budget f(x) >= 2 for every red point. A solution is a non-crossing
//! spanning tree whose leaves are exactly the blue points and whose red
//! degrees satisfy 2 <= deg(x) <= f(x). Such a tree exists if and only if
//! 2 <= |B| <= sum(f(x) - 2) + 2; this module checks that condition and
//! tightens budgets to the equality case the tree builder works in.

use std::fmt;

use crate::geom::{validate_general_position, ExactPoint, PositionViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Why a candidate instance was rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    /// A red point's budget is below the minimum of 2.
    BudgetTooSmall { red_index: usize, budget: u32 },
    /// A coordinate exceeds the supported magnitude.
    CoordinateOutOfRange { vertex: usize, point: ExactPoint },
    /// Duplicate points or a collinear triple. Indices are in internal
    /// vertex order (reds first, then blues).
    GeneralPosition(PositionViolation),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::BudgetTooSmall { red_index, budget } => {
                write!(f, "red point {red_index} has degree budget {budget}; minimum is 2")
            }
            InstanceError::CoordinateOutOfRange { vertex, point } => {
                write!(f, "point {vertex} at {point} is outside the supported coordinate range")
            }
            InstanceError::GeneralPosition(v) => write!(f, "not in general position: {v}"),
        }
    }
}

impl std::error::Error for InstanceError {}

/// An immutable bicolored point set with degree budgets.
///
/// Vertices are indexed with the red points first (in the order given),
/// followed by the blue points (in the order given). All operations on
/// instances are pure.
///
/// Construction enforces budgets >= 2, coordinate bounds, and general
/// position. It deliberately does not require |B| >= 2, so that feasibility
/// classification can report that case rather than make it unrepresentable.
#[derive(Clone, Debug)]
pub struct Instance {
    points: Vec<ExactPoint>,
    n_red: usize,
    budgets: Vec<u32>,
}

impl Instance {
    pub fn new(
        red: Vec<(ExactPoint, u32)>,
        blue: Vec<ExactPoint>,
    ) -> Result<Instance, InstanceError> {
        let n_red = red.len();
        let mut points = Vec::with_capacity(n_red + blue.len());
        let mut budgets = Vec::with_capacity(n_red);
        for (i, (p, f)) in red.into_iter().enumerate() {
            if f < 2 {
                return Err(InstanceError::BudgetTooSmall { red_index: i, budget: f });
            }
            points.push(p);
            budgets.push(f);
        }
        points.extend(blue);
        for (v, p) in points.iter().enumerate() {
            if !p.in_bounds() {
                return Err(InstanceError::CoordinateOutOfRange { vertex: v, point: *p });
            }
        }
        validate_general_position(&points).map_err(InstanceError::GeneralPosition)?;
        Ok(Instance { points, n_red, budgets })
    }

    /// Instance with budget k for every red point.
    pub fn uniform(
        red: Vec<ExactPoint>,
        blue: Vec<ExactPoint>,
        k: u32,
    ) -> Result<Instance, InstanceError> {
        if k < 2 {
            return Err(InstanceError::BudgetTooSmall { red_index: 0, budget: k });
        }
        Instance::new(red.into_iter().map(|p| (p, k)).collect(), blue)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn n_red(&self) -> usize {
        self.n_red
    }

    pub fn n_blue(&self) -> usize {
        self.points.len() - self.n_red
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn point(&self, v: usize) -> ExactPoint {
        self.points[v]
    }

    pub fn color(&self, v: usize) -> Color {
        assert!(v < self.points.len(), "vertex {v} out of range");
        if v < self.n_red {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn is_red(&self, v: usize) -> bool {
        self.color(v) == Color::Red
    }

    pub fn is_blue(&self, v: usize) -> bool {
        self.color(v) == Color::Blue
    }

    /// Degree budget of a red vertex. Asking for a blue vertex's budget is a
    /// caller bug, not a data error, and panics.
    pub fn budget(&self, v: usize) -> u32 {
        assert!(v < self.n_red, "vertex {v} is not red; blue points carry no degree budget");
        self.budgets[v]
    }

    /// Budgets of all red vertices, indexed by vertex.
    pub fn budgets(&self) -> &[u32] {
        &self.budgets
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeasibilityStatus {
    /// Fewer than two blue points; no tree has fewer than two leaves.
    InfeasibleLow,
    /// |B| equals the budget bound; every red degree is forced to f(x).
    Equality,
    /// 2 <= |B| and strictly below the bound.
    StrictlyFeasible,
    /// |B| exceeds sum(f(x) - 2) + 2.
    InfeasibleHigh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub blue_count: usize,
    /// sum(f(x) - 2) + 2 - |B|.
    pub slack: i64,
    pub status: FeasibilityStatus,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, FeasibilityStatus::Equality | FeasibilityStatus::StrictlyFeasible)
    }

    /// sum(f(x) - 2) + 2, the largest admissible |B|.
    pub fn bound(&self) -> i64 {
        self.slack + self.blue_count as i64
    }
}

/// Classifies an instance against the bound 2 <= |B| <= sum(f(x) - 2) + 2.
pub fn check_feasibility(inst: &Instance) -> FeasibilityReport {
    let blue_count = inst.n_blue();
    let bound: i64 = inst.budgets().iter().map(|&f| f as i64 - 2).sum::<i64>() + 2;
    let slack = bound - blue_count as i64;
    let status = if blue_count < 2 {
        FeasibilityStatus::InfeasibleLow
    } else if slack < 0 {
        FeasibilityStatus::InfeasibleHigh
    } else if slack == 0 {
        FeasibilityStatus::Equality
    } else {
        FeasibilityStatus::StrictlyFeasible
    };
    FeasibilityReport { blue_count, slack, status }
}

/// Tightens budgets so that sum(f'(x) - 2) + 2 = |B| exactly.
///
/// Rule: repeatedly decrement the red point with the currently largest f',
/// breaking ties toward the lowest vertex index, until the slack is zero.
/// Computed in closed form: find the lowest level L >= 2 whose cap removes
/// at most the slack, cap every budget at L, and hand the leftover
/// single-step decrements to the lowest-indexed vertices at that level.
/// The floor of 2 is safe: leftover decrements occur only at levels above 2.
///
/// Panics if the instance is infeasible.
pub fn reduce_budget(inst: &Instance) -> Vec<u32> {
    let report = check_feasibility(inst);
    assert!(report.is_feasible(), "reduce_budget requires a feasible instance: {:?}", report.status);
    let mut f: Vec<u32> = inst.budgets().to_vec();
    let slack = report.slack as u64;
    if slack == 0 {
        return f;
    }
    let removed_at = |level: u64| -> u64 {
        f.iter().map(|&v| (v as u64).saturating_sub(level)).sum()
    };
    let max_f = f.iter().copied().max().expect("slack > 0 requires a red point") as u64;
    let mut lo = 2u64;
    let mut hi = max_f;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if removed_at(mid) <= slack {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let level = lo;
    let mut extra = slack - removed_at(level);
    for v in f.iter_mut() {
        if (*v as u64) > level {
            *v = level as u32;
        }
    }
    for v in f.iter_mut() {
        if extra == 0 {
            break;
        }
        if (*v as u64) == level {
            *v -= 1;
            extra -= 1;
        }
    }
    debug_assert_eq!(extra, 0);
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ExactPoint;
    use crate::testutil::{parabola_instance, parabola_points};
    use proptest::prelude::*;

    #[test]
    fn feasibility_no_reds_two_blues_is_equality() {
        let inst = parabola_instance(&[], 2);
        let rep = check_feasibility(&inst);
        assert_eq!(rep.status, FeasibilityStatus::Equality);
        assert_eq!(rep.slack, 0);
        assert_eq!(rep.bound(), 2);
    }

    #[test]
    fn feasibility_seven_reds_budget_three() {
        let inst = parabola_instance(&[3; 7], 7);
        let rep = check_feasibility(&inst);
        assert_eq!(rep.status, FeasibilityStatus::StrictlyFeasible);
        assert_eq!(rep.slack, 2);
        assert_eq!(rep.bound(), 9);
    }

    #[test]
    fn feasibility_blue_over_bound() {
        let inst = parabola_instance(&[4], 5);
        let rep = check_feasibility(&inst);
        assert_eq!(rep.status, FeasibilityStatus::InfeasibleHigh);
        assert_eq!(rep.slack, -1);
        assert_eq!(rep.bound(), 4);
    }

    #[test]
    fn feasibility_one_blue() {
        let inst = parabola_instance(&[5], 1);
        assert_eq!(check_feasibility(&inst).status, FeasibilityStatus::InfeasibleLow);
    }

    #[test]
    fn reduce_identity_on_equality() {
        let inst = parabola_instance(&[3, 4], 5);
        assert_eq!(check_feasibility(&inst).slack, 0);
        assert_eq!(reduce_budget(&inst), vec![3, 4]);
    }

    #[test]
    fn reduce_largest_first_lowest_index_ties() {
        // f = {4, 3}, |B| = 3: decrement 4 -> 3, then the tie at 3 goes to
        // the lower index, 3 -> 2.
        let inst = parabola_instance(&[4, 3], 3);
        assert_eq!(reduce_budget(&inst), vec![2, 3]);
    }

    #[test]
    fn reduce_single_red_at_floor() {
        let inst = parabola_instance(&[2], 2);
        assert_eq!(reduce_budget(&inst), vec![2]);
    }

    #[test]
    fn reduce_drains_to_floor_when_blue_count_is_two() {
        // f = {5, 4}, |B| = 2: slack 5 equals the whole reducible budget.
        let inst = parabola_instance(&[5, 4], 2);
        assert_eq!(reduce_budget(&inst), vec![2, 2]);
    }

    #[test]
    fn reduce_leftover_goes_to_lowest_index() {
        // f = {3, 5, 5}, |B| = 4, slack 5: everything levels at 3 after four
        // decrements, and the leftover one hits index 0 even though it was
        // never capped.
        let inst = parabola_instance(&[3, 5, 5], 4);
        assert_eq!(reduce_budget(&inst), vec![2, 3, 3]);
    }

    #[test]
    fn uniform_two_blues_k2_is_equality() {
        let pts = parabola_points(6);
        let inst = Instance::uniform(pts[..4].to_vec(), pts[4..].to_vec(), 2).unwrap();
        assert_eq!(check_feasibility(&inst).status, FeasibilityStatus::Equality);
    }

    #[test]
    fn uniform_k3_seven_and_seven() {
        let pts = parabola_points(14);
        let inst = Instance::uniform(pts[..7].to_vec(), pts[7..].to_vec(), 3).unwrap();
        assert_eq!(check_feasibility(&inst).status, FeasibilityStatus::StrictlyFeasible);
    }

    #[test]
    fn uniform_k2_three_blues_infeasible() {
        let pts = parabola_points(8);
        let inst = Instance::uniform(pts[..5].to_vec(), pts[5..].to_vec(), 2).unwrap();
        assert_eq!(check_feasibility(&inst).status, FeasibilityStatus::InfeasibleHigh);
    }

    #[test]
    fn uniform_rejects_k_below_two() {
        let pts = parabola_points(3);
        let err = Instance::uniform(pts[..1].to_vec(), pts[1..].to_vec(), 1).unwrap_err();
        assert!(matches!(err, InstanceError::BudgetTooSmall { budget: 1, .. }));
    }

    #[test]
    fn new_rejects_budget_below_two() {
        let pts = parabola_points(3);
        let err = Instance::new(vec![(pts[0], 1)], pts[1..].to_vec()).unwrap_err();
        assert_eq!(err, InstanceError::BudgetTooSmall { red_index: 0, budget: 1 });
    }

    #[test]
    fn new_rejects_collinear_points() {
        let blue = vec![
            ExactPoint::new(0, 0),
            ExactPoint::new(1, 1),
            ExactPoint::new(2, 2),
        ];
        let err = Instance::new(vec![], blue).unwrap_err();
        assert_eq!(
            err,
            InstanceError::GeneralPosition(PositionViolation::Collinear { i: 0, j: 1, k: 2 })
        );
    }

    #[test]
    fn new_rejects_out_of_range_coordinate() {
        let far = ExactPoint::new(crate::geom::MAX_COORD + 1, 0);
        let err = Instance::new(vec![], vec![far, ExactPoint::new(0, 1)]).unwrap_err();
        assert!(matches!(err, InstanceError::CoordinateOutOfRange { vertex: 0, .. }));
    }

    /// Reference implementation of the reduction rule, one decrement at a
    /// time, for cross-checking the closed form.
    fn reduce_stepwise(f: &[u32], n_blue: usize) -> Vec<u32> {
        let mut f = f.to_vec();
        let mut slack: i64 =
            f.iter().map(|&v| v as i64 - 2).sum::<i64>() + 2 - n_blue as i64;
        assert!(slack >= 0);
        while slack > 0 {
            let (i, _) = f
                .iter()
                .enumerate()
                .max_by_key(|&(i, &v)| (v, std::cmp::Reverse(i)))
                .unwrap();
            f[i] -= 1;
            slack -= 1;
        }
        f
    }

    fn budget_vec() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(2u32..=9, 0..8)
    }

    proptest! {
        #[test]
        fn reduce_matches_stepwise_rule(f in budget_vec(), extra in 0i64..6) {
            let bound: i64 = f.iter().map(|&v| v as i64 - 2).sum::<i64>() + 2;
            let n_blue = (bound - extra).max(2);
            prop_assume!(n_blue <= bound);
            let inst = parabola_instance(&f, n_blue as usize);
            prop_assert!(check_feasibility(&inst).is_feasible());
            prop_assert_eq!(reduce_budget(&inst), reduce_stepwise(&f, n_blue as usize));
        }

        #[test]
        fn reduce_hits_equality_and_respects_bounds(f in budget_vec(), n_blue in 2usize..12) {
            let inst = parabola_instance(&f, n_blue);
            prop_assume!(check_feasibility(&inst).is_feasible());
            let fp = reduce_budget(&inst);
            let total: i64 = fp.iter().map(|&v| v as i64 - 2).sum();
            prop_assert_eq!(total + 2, n_blue as i64);
            for (i, (&lo, &hi)) in fp.iter().zip(f.iter()).enumerate() {
                prop_assert!(lo >= 2, "f'[{}] dropped below 2", i);
                prop_assert!(lo <= hi, "f'[{}] exceeds f", i);
            }
        }

        #[test]
        fn reduce_idempotent(f in budget_vec(), n_blue in 2usize..12) {
            let inst = parabola_instance(&f, n_blue);
            prop_assume!(check_feasibility(&inst).is_feasible());
            let fp = reduce_budget(&inst);
            let equality = parabola_instance(&fp, n_blue);
            prop_assert_eq!(check_feasibility(&equality).slack, 0);
            prop_assert_eq!(reduce_budget(&equality), fp);
        }
    }
}
