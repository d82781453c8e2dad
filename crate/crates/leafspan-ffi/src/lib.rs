//! C ABI over the leafspan solver.
//!
//! Handles are opaque; every constructor hands ownership to the caller, who
//! must release it with the matching `_free`. All functions return
//! `ls_status` or plain values and never unwind across the boundary.
//!
//! Vertex indexing at this layer: red points are `0..n_red` in input order,
//! blue points follow as `n_red..n_red + n_blue`. Coordinates are taken as
//! 64-bit integers with `|coordinate| <= LS_MAX_COORD`; lengths come back in
//! the same units.

#![allow(non_camel_case_types)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use leafspan::geom::ExactPoint;
use leafspan::instance::{check_feasibility, Instance, InstanceError};
use leafspan::uncross::{solve, Solution, SolveError};
use leafspan::verify::verify_tree;

/// Largest allowed coordinate magnitude.
pub const LS_MAX_COORD: i64 = 1073741824;
const _: () = assert!(LS_MAX_COORD == leafspan::MAX_COORD);

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ls_status {
    LS_OK = 0,
    /// A required pointer argument was null.
    LS_NULL_ARGUMENT = 1,
    /// Malformed input: bad budget, coordinate out of range, or an output
    /// buffer that is too small.
    LS_BAD_ARGUMENT = 2,
    /// The blue count lies outside [2, sum(f - 2) + 2].
    LS_INFEASIBLE = 3,
    /// Coincident points or a collinear triple.
    LS_GENERAL_POSITION = 4,
    /// The swap limit was reached before all crossings cleared.
    LS_ITERATION_CAP = 5,
    /// The solved tree failed re-verification.
    LS_VERIFY_FAILED = 6,
    /// Unexpected internal failure.
    LS_INTERNAL_ERROR = 7,
}

/// Opaque instance handle.
pub struct ls_instance(Instance);

/// Opaque solution handle.
pub struct ls_solution {
    solution: Solution,
    n_red: usize,
    total_length: f64,
}

fn guarded(f: impl FnOnce() -> ls_status) -> ls_status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(ls_status::LS_INTERNAL_ERROR)
}

/// Builds an instance from flat coordinate arrays.
///
/// `red_xy` holds `n_red` interleaved (x, y) pairs and `red_budgets` one
/// budget (>= 2) per red point; `blue_xy` holds `n_blue` pairs. On LS_OK,
/// `*out` owns the new handle.
///
/// # Safety
/// `red_xy` must point to `2 * n_red` readable i64 values and `red_budgets`
/// to `n_red` readable u32 values when `n_red > 0`; `blue_xy` must point to
/// `2 * n_blue` readable i64 values when `n_blue > 0`; `out` must be a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_instance_new(
    red_xy: *const i64,
    red_budgets: *const u32,
    n_red: usize,
    blue_xy: *const i64,
    n_blue: usize,
    out: *mut *mut ls_instance,
) -> ls_status {
    guarded(|| {
        if out.is_null()
            || (n_red > 0 && (red_xy.is_null() || red_budgets.is_null()))
            || (n_blue > 0 && blue_xy.is_null())
        {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let red_coords = if n_red > 0 { unsafe { slice::from_raw_parts(red_xy, 2 * n_red) } } else { &[] };
        let budgets = if n_red > 0 { unsafe { slice::from_raw_parts(red_budgets, n_red) } } else { &[] };
        let blue_coords = if n_blue > 0 { unsafe { slice::from_raw_parts(blue_xy, 2 * n_blue) } } else { &[] };

        let red: Vec<(ExactPoint, u32)> = (0..n_red)
            .map(|i| (ExactPoint::new(red_coords[2 * i], red_coords[2 * i + 1]), budgets[i]))
            .collect();
        let blue: Vec<ExactPoint> =
            (0..n_blue).map(|i| ExactPoint::new(blue_coords[2 * i], blue_coords[2 * i + 1])).collect();

        match Instance::new(red, blue) {
            Ok(inst) => {
                unsafe { *out = Box::into_raw(Box::new(ls_instance(inst))) };
                ls_status::LS_OK
            }
            Err(InstanceError::GeneralPosition(_)) => ls_status::LS_GENERAL_POSITION,
            Err(_) => ls_status::LS_BAD_ARGUMENT,
        }
    })
}

/// Releases an instance handle; a null pointer is ignored.
///
/// # Safety
/// `inst` must be null or a pointer returned by `ls_instance_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ls_instance_free(inst: *mut ls_instance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Reports feasibility. Returns LS_OK when a tree exists, LS_INFEASIBLE
/// otherwise; when `slack` is non-null it receives
/// sum(f - 2) + 2 - n_blue either way.
///
/// # Safety
/// `inst` must be a live instance handle; `slack` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ls_instance_feasibility(
    inst: *const ls_instance,
    slack: *mut i64,
) -> ls_status {
    guarded(|| {
        if inst.is_null() {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let report = check_feasibility(unsafe { &(*inst).0 });
        if !slack.is_null() {
            unsafe { *slack = report.slack };
        }
        if report.is_feasible() {
            ls_status::LS_OK
        } else {
            ls_status::LS_INFEASIBLE
        }
    })
}

/// Solves the instance. `max_iters` of 0 selects the default swap cap of
/// 10 n^3. On LS_OK, `*out` owns a verified solution.
///
/// # Safety
/// `inst` must be a live instance handle and `out` a valid location to
/// store a pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_solve(
    inst: *const ls_instance,
    max_iters: u64,
    out: *mut *mut ls_solution,
) -> ls_status {
    guarded(|| {
        if inst.is_null() || out.is_null() {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let instance = unsafe { &(*inst).0 };
        let cap = if max_iters == 0 { None } else { Some(max_iters) };
        let solution = match solve(instance, cap) {
            Ok(s) => s,
            Err(SolveError::Infeasible(_)) => return ls_status::LS_INFEASIBLE,
            Err(SolveError::IterationCapExceeded { .. }) => return ls_status::LS_ITERATION_CAP,
        };
        if !verify_tree(instance, &solution.tree).passes() {
            return ls_status::LS_VERIFY_FAILED;
        }
        let total_length =
            leafspan::geom::total_length(solution.tree.edges(), instance.points());
        let handle = ls_solution { solution, n_red: instance.n_red(), total_length };
        unsafe { *out = Box::into_raw(Box::new(handle)) };
        ls_status::LS_OK
    })
}

/// Releases a solution handle; a null pointer is ignored.
///
/// # Safety
/// `sol` must be null or a pointer returned by `ls_solve` that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_free(sol: *mut ls_solution) {
    if !sol.is_null() {
        drop(unsafe { Box::from_raw(sol) });
    }
}

/// Number of tree edges (always n - 1); 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_edge_count(sol: *const ls_solution) -> usize {
    if sol.is_null() {
        return 0;
    }
    unsafe { (*sol).solution.tree.edge_count() }
}

/// Copies the edges as interleaved vertex pairs into `buf`, which must hold
/// at least `2 * edge_count` entries (`buf_len` says how many it holds).
///
/// # Safety
/// `sol` must be a live solution handle and `buf` writable for `buf_len`
/// entries.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_get_edges(
    sol: *const ls_solution,
    buf: *mut u32,
    buf_len: usize,
) -> ls_status {
    guarded(|| {
        if sol.is_null() || buf.is_null() {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let tree = unsafe { &(*sol).solution.tree };
        let needed = 2 * tree.edge_count();
        if buf_len < needed {
            return ls_status::LS_BAD_ARGUMENT;
        }
        let out = unsafe { slice::from_raw_parts_mut(buf, needed) };
        for (i, seg) in tree.edges().enumerate() {
            let (a, b) = seg.endpoints();
            out[2 * i] = a as u32;
            out[2 * i + 1] = b as u32;
        }
        ls_status::LS_OK
    })
}

/// Total edge length in input coordinate units; NaN for a null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_total_length(sol: *const ls_solution) -> f64 {
    if sol.is_null() {
        return f64::NAN;
    }
    unsafe { (*sol).total_length }
}

/// Number of uncrossing swaps the solver performed.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_swap_count(sol: *const ls_solution) -> u64 {
    if sol.is_null() {
        return 0;
    }
    unsafe { (*sol).solution.trace.swaps.len() as u64 }
}

/// Number of entries `ls_solution_get_f_prime` writes (= n_red).
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_f_prime_count(sol: *const ls_solution) -> usize {
    if sol.is_null() {
        return 0;
    }
    unsafe { (*sol).n_red }
}

/// Copies the realized degree per red point into `buf` (one entry per red
/// point, in input order).
///
/// # Safety
/// `sol` must be a live solution handle and `buf` writable for `buf_len`
/// entries.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_get_f_prime(
    sol: *const ls_solution,
    buf: *mut u32,
    buf_len: usize,
) -> ls_status {
    guarded(|| {
        if sol.is_null() || buf.is_null() {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let f_prime = unsafe { &(*sol).solution.f_prime };
        if buf_len < f_prime.len() {
            return ls_status::LS_BAD_ARGUMENT;
        }
        let out = unsafe { slice::from_raw_parts_mut(buf, f_prime.len()) };
        out.copy_from_slice(f_prime);
        ls_status::LS_OK
    })
}

/// Re-runs the independent verifier on a solution against its instance.
///
/// # Safety
/// Both handles must be live, and `sol` must have been produced from
/// `inst`.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_verify(
    inst: *const ls_instance,
    sol: *const ls_solution,
) -> ls_status {
    guarded(|| {
        if inst.is_null() || sol.is_null() {
            return ls_status::LS_NULL_ARGUMENT;
        }
        let (instance, solution) = unsafe { (&(*inst).0, &(*sol).solution) };
        if verify_tree(instance, &solution.tree).passes() {
            ls_status::LS_OK
        } else {
            ls_status::LS_VERIFY_FAILED
        }
    })
}

/// Static name for a status code, e.g. "LS_OK".
#[no_mangle]
pub extern "C" fn ls_status_name(status: ls_status) -> *const c_char {
    let name: &'static [u8] = match status {
        ls_status::LS_OK => b"LS_OK\0",
        ls_status::LS_NULL_ARGUMENT => b"LS_NULL_ARGUMENT\0",
        ls_status::LS_BAD_ARGUMENT => b"LS_BAD_ARGUMENT\0",
        ls_status::LS_INFEASIBLE => b"LS_INFEASIBLE\0",
        ls_status::LS_GENERAL_POSITION => b"LS_GENERAL_POSITION\0",
        ls_status::LS_ITERATION_CAP => b"LS_ITERATION_CAP\0",
        ls_status::LS_VERIFY_FAILED => b"LS_VERIFY_FAILED\0",
        ls_status::LS_INTERNAL_ERROR => b"LS_INTERNAL_ERROR\0",
    };
    name.as_ptr() as *const c_char
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn ls_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
