#ifndef QLOCALITY_H
#define QLOCALITY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QlObjective {
  QL_OBJECTIVE_SUM_OF_SQUARES = 0,
  QL_OBJECTIVE_MAX_ABS_PM = 1,
  QL_OBJECTIVE_ABS_X = 2,
} QlObjective;

typedef enum QlRegion {
  QL_REGION_LQT = 0,
  QL_REGION_LT_NOT_LQT = 1,
  QL_REGION_QM_NOT_LT = 2,
  QL_REGION_RT_NOT_QM = 3,
  QL_REGION_OUTSIDE_RT = 4,
} QlRegion;

typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  /**
   * Input failed validation (vector norm, orthogonality, weights, JSON).
   */
  QL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A parameter lies outside its domain, e.g. a Werner weight outside [0, 1].
   */
  QL_STATUS_DOMAIN = 3,
  /**
   * The state matrix is not a valid density matrix.
   */
  QL_STATUS_INVALID_STATE = 4,
  QL_STATUS_INTERNAL = 5,
} QlStatus;

/**
 * Opaque common-cause model.
 */
typedef struct QlModel QlModel;

/**
 * Opaque two-qubit density matrix.
 */
typedef struct QlState QlState;

/**
 * Classification of one `(X, Y)` point. Margins are `limit - achieved`.
 */
typedef struct QlReport {
  double x;
  double y;
  double margin_quantum_mechanics;
  double margin_realism;
  double margin_locality;
  double margin_quantum_locality;
  int32_t region;
  bool hidden_qunonlocality;
} QlReport;

typedef struct QlOptimum {
  double best_value;
  double x;
  double y;
  /**
   * `a, a_perp, b, b_perp`, three components each.
   */
  double settings[12];
  bool converged;
} QlOptimum;

typedef struct QlSample {
  double x;
  double y;
  double se_x;
  double se_y;
  /**
   * `(+,+), (+,-), (-,+), (-,-)` for `(a,b), (a,b_perp), (a_perp,b), (a_perp,b_perp)`.
   */
  uint64_t counts[16];
} QlSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *ql_last_error(void);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum QlStatus ql_state_singlet(struct QlState **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum QlStatus ql_state_werner(double x, struct QlState **out);

/**
 * # Safety
 * `bloch_a`, `bloch_b` point at 3 doubles; `out` is a valid pointer.
 */
enum QlStatus ql_state_product(const double *bloch_a, const double *bloch_b, struct QlState **out);

/**
 * Builds a state from row-major real and imaginary parts (16 doubles each).
 *
 * # Safety
 * `re` and `im` point at 16 doubles; `out` is a valid pointer.
 */
enum QlStatus ql_state_from_matrix(const double *re, const double *im, struct QlState **out);

/**
 * # Safety
 * `state` is null or a handle from this library not yet freed.
 */
void ql_state_free(struct QlState *state);

/**
 * `E(a, b)` for unit vectors `a`, `b`.
 *
 * # Safety
 * Pointers must be valid; `a`, `b` point at 3 doubles.
 */
enum QlStatus ql_correlation(const struct QlState *state,
                             const double *a,
                             const double *b,
                             double *out);

/**
 * `X` and `Y` for the pairs `(a, a_perp)`, `(b, b_perp)`.
 *
 * # Safety
 * Pointers must be valid; vectors point at 3 doubles.
 */
enum QlStatus ql_xy(const struct QlState *state,
                    const double *a,
                    const double *a_perp,
                    const double *b,
                    const double *b_perp,
                    double *out_x,
                    double *out_y);

/**
 * Classifies a point of the X-Y plane. `region` holds a [`QlRegion`] value.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QlStatus ql_classify(double x, double y, double tol, struct QlReport *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum QlStatus ql_is_separable_ppt(const struct QlState *state, double tol, bool *out);

/**
 * Maximizes `objective` over both setting pairs. `restarts` of 0 selects the default.
 *
 * # Safety
 * Pointers must be valid.
 */
enum QlStatus ql_maximize(const struct QlState *state,
                          enum QlObjective objective,
                          uint32_t restarts,
                          uint64_t seed,
                          struct QlOptimum *out);

/**
 * Monte Carlo estimate of `X`, `Y` with `shots` per setting combination.
 *
 * # Safety
 * Pointers must be valid; vectors point at 3 doubles.
 */
enum QlStatus ql_sample(const struct QlState *state,
                        const double *a,
                        const double *a_perp,
                        const double *b,
                        const double *b_perp,
                        uint64_t shots,
                        uint64_t seed,
                        struct QlSample *out);

/**
 * Parses a model from the same JSON accepted by the command-line tool.
 *
 * # Safety
 * `json` is a NUL-terminated UTF-8 string; `out` is a valid pointer.
 */
enum QlStatus ql_model_from_json(const char *json, struct QlModel **out);

/**
 * # Safety
 * Pointers must be valid; `a`, `b` point at 3 doubles.
 */
enum QlStatus ql_model_correlation(const struct QlModel *model,
                                   const double *a,
                                   const double *b,
                                   double *out);

/**
 * # Safety
 * `model` is null or a handle from this library not yet freed.
 */
void ql_model_free(struct QlModel *model);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLOCALITY_H */
