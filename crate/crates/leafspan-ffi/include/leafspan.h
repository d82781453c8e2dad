/* C interface to the leafspan solver. See ls_status for error codes. */

#ifndef LEAFSPAN_H
#define LEAFSPAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest allowed coordinate magnitude.
 */
#define LS_MAX_COORD 1073741824

/**
 * Result of every fallible call.
 */
typedef enum {
  LS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LS_NULL_ARGUMENT = 1,
  /**
   * Malformed input: bad budget, coordinate out of range, or an output
   * buffer that is too small.
   */
  LS_BAD_ARGUMENT = 2,
  /**
   * The blue count lies outside [2, sum(f - 2) + 2].
   */
  LS_INFEASIBLE = 3,
  /**
   * Coincident points or a collinear triple.
   */
  LS_GENERAL_POSITION = 4,
  /**
   * The swap limit was reached before all crossings cleared.
   */
  LS_ITERATION_CAP = 5,
  /**
   * The solved tree failed re-verification.
   */
  LS_VERIFY_FAILED = 6,
  /**
   * Unexpected internal failure.
   */
  LS_INTERNAL_ERROR = 7,
} ls_status;

/**
 * Opaque instance handle.
 */
typedef struct ls_instance ls_instance;

/**
 * Opaque solution handle.
 */
typedef struct ls_solution ls_solution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an instance from flat coordinate arrays.
 *
 * `red_xy` holds `n_red` interleaved (x, y) pairs and `red_budgets` one
 * budget (>= 2) per red point; `blue_xy` holds `n_blue` pairs. On LS_OK,
 * `*out` owns the new handle.
 *
 * # Safety
 * `red_xy` must point to `2 * n_red` readable i64 values and `red_budgets`
 * to `n_red` readable u32 values when `n_red > 0`; `blue_xy` must point to
 * `2 * n_blue` readable i64 values when `n_blue > 0`; `out` must be a valid
 * location to store a pointer.
 */
ls_status ls_instance_new(const int64_t *red_xy,
                          const uint32_t *red_budgets,
                          uintptr_t n_red,
                          const int64_t *blue_xy,
                          uintptr_t n_blue,
                          ls_instance **out);

/**
 * Releases an instance handle; a null pointer is ignored.
 *
 * # Safety
 * `inst` must be null or a pointer returned by `ls_instance_new` that has
 * not been freed yet.
 */
void ls_instance_free(ls_instance *inst);

/**
 * Reports feasibility. Returns LS_OK when a tree exists, LS_INFEASIBLE
 * otherwise; when `slack` is non-null it receives
 * sum(f - 2) + 2 - n_blue either way.
 *
 * # Safety
 * `inst` must be a live instance handle; `slack` must be null or writable.
 */
ls_status ls_instance_feasibility(const ls_instance *inst, int64_t *slack);

/**
 * Solves the instance. `max_iters` of 0 selects the default swap cap of
 * 10 n^3. On LS_OK, `*out` owns a verified solution.
 *
 * # Safety
 * `inst` must be a live instance handle and `out` a valid location to
 * store a pointer.
 */
ls_status ls_solve(const ls_instance *inst, uint64_t max_iters, ls_solution **out);

/**
 * Releases a solution handle; a null pointer is ignored.
 *
 * # Safety
 * `sol` must be null or a pointer returned by `ls_solve` that has not been
 * freed yet.
 */
void ls_solution_free(ls_solution *sol);

/**
 * Number of tree edges (always n - 1); 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uintptr_t ls_solution_edge_count(const ls_solution *sol);

/**
 * Copies the edges as interleaved vertex pairs into `buf`, which must hold
 * at least `2 * edge_count` entries (`buf_len` says how many it holds).
 *
 * # Safety
 * `sol` must be a live solution handle and `buf` writable for `buf_len`
 * entries.
 */
ls_status ls_solution_get_edges(const ls_solution *sol, uint32_t *buf, uintptr_t buf_len);

/**
 * Total edge length in input coordinate units; NaN for a null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
double ls_solution_total_length(const ls_solution *sol);

/**
 * Number of uncrossing swaps the solver performed.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uint64_t ls_solution_swap_count(const ls_solution *sol);

/**
 * Number of entries `ls_solution_get_f_prime` writes (= n_red).
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uintptr_t ls_solution_f_prime_count(const ls_solution *sol);

/**
 * Copies the realized degree per red point into `buf` (one entry per red
 * point, in input order).
 *
 * # Safety
 * `sol` must be a live solution handle and `buf` writable for `buf_len`
 * entries.
 */
ls_status ls_solution_get_f_prime(const ls_solution *sol, uint32_t *buf, uintptr_t buf_len);

/**
 * Re-runs the independent verifier on a solution against its instance.
 *
 * # Safety
 * Both handles must be live, and `sol` must have been produced from
 * `inst`.
 */
ls_status ls_solution_verify(const ls_instance *inst, const ls_solution *sol);

/**
 * Static name for a status code, e.g. "LS_OK".
 */
const char *ls_status_name(ls_status status);

/**
 * Library version as a static C string.
 */
const char *ls_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEAFSPAN_H */
