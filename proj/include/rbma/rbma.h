/*
 * C interface to the RBM assignment library.
 *
 * All handles are opaque and owned by the caller once returned; release them
 * with the matching *_free function. Functions returning rbma_status report
 * failure details through rbma_last_error(), which is thread-local and valid
 * until the next failing call on the same thread.
 */
#ifndef RBMA_RBMA_H
#define RBMA_RBMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RBMA_BUILDING_LIBRARY)
#    define RBMA_API __declspec(dllexport)
#  else
#    define RBMA_API __declspec(dllimport)
#  endif
#else
#  define RBMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rbma_status {
  RBMA_OK = 0,
  RBMA_ERR_INVALID_ARGUMENT = 1,
  RBMA_ERR_SHAPE = 2,
  RBMA_ERR_IO = 3,
  RBMA_ERR_PARSE = 4,
  RBMA_ERR_VERSION = 5,
  RBMA_ERR_DIMENSION = 6,
  RBMA_ERR_INFEASIBLE = 7,
  RBMA_ERR_UNASSIGNABLE_ROW = 8,
  RBMA_ERR_DIVERGENCE = 9,
  RBMA_ERR_TOO_LARGE = 10,
  RBMA_ERR_INTERNAL = 11
} rbma_status;

typedef enum rbma_method {
  RBMA_METHOD_RBMAA = 0,
  RBMA_METHOD_HUNGARIAN = 1,
  RBMA_METHOD_GREEDY = 2,
  RBMA_METHOD_BRUTE_FORCE = 3
} rbma_method;

typedef enum rbma_feasibility_mode {
  RBMA_MODE_ROW_ONLY = 0,
  RBMA_MODE_PERFECT = 1
} rbma_feasibility_mode;

typedef struct rbma_instance rbma_instance;
typedef struct rbma_solution rbma_solution;
typedef struct rbma_params rbma_params;

/* Solver settings. Call rbma_config_init before overriding fields. */
typedef struct rbma_config {
  double alpha;            /* connection / visible-bias rate, (0,1) */
  double beta;             /* hidden-bias rate, (0,1) */
  double eta;              /* ratio penalty, >= 0 */
  uint32_t cd_k;           /* Gibbs steps per CD estimate */
  uint32_t epochs;         /* epochs per outer iteration */
  uint32_t batch;          /* mini-batch size */
  uint64_t seed;
  double quantile;         /* threshold quantile level, (0,1) */
  uint32_t max_outer_iters;
  uint32_t hidden_units;   /* 0 selects ceil(columns / 2) */
} rbma_config;

RBMA_API const char* rbma_version(void);
RBMA_API const char* rbma_last_error(void);
RBMA_API const char* rbma_status_name(rbma_status status);

RBMA_API void rbma_config_init(rbma_config* cfg);

RBMA_API const char* rbma_method_name(rbma_method method);
RBMA_API rbma_status rbma_method_parse(const char* name, rbma_method* out);

/* ---- instances ---------------------------------------------------------- */

RBMA_API rbma_status rbma_instance_from_history_file(const char* path, rbma_instance** out);
RBMA_API rbma_status rbma_instance_from_records(const char* const* left, const char* const* right,
                                                size_t count, rbma_instance** out);
RBMA_API void rbma_instance_free(rbma_instance* inst);

RBMA_API size_t rbma_instance_rows(const rbma_instance* inst);
RBMA_API size_t rbma_instance_cols(const rbma_instance* inst);
/* NULL when the index is out of range. */
RBMA_API const char* rbma_instance_left_label(const rbma_instance* inst, size_t row);
RBMA_API const char* rbma_instance_right_label(const rbma_instance* inst, size_t col);
RBMA_API rbma_status rbma_instance_weight(const rbma_instance* inst, size_t row, size_t col,
                                          double* out);
/* Dense CSV: "label,<right labels>" header, one row of counts per left label. */
RBMA_API rbma_status rbma_instance_write_matrix(const rbma_instance* inst, const char* path);

/* ---- solving ------------------------------------------------------------ */

/* cfg may be NULL for defaults; it is only read by RBMA_METHOD_RBMAA. */
RBMA_API rbma_status rbma_solve(const rbma_instance* inst, rbma_method method,
                                const rbma_config* cfg, rbma_solution** out);
RBMA_API void rbma_solution_free(rbma_solution* sol);

RBMA_API rbma_method rbma_solution_method(const rbma_solution* sol);
RBMA_API size_t rbma_solution_rows(const rbma_solution* sol);
/* Column assigned to `row`, or -1 if the row does not hold exactly one 1. */
RBMA_API int64_t rbma_solution_column(const rbma_solution* sol, size_t row);
RBMA_API double rbma_solution_objective(const rbma_solution* sol);
RBMA_API int rbma_solution_row_feasible(const rbma_solution* sol);
RBMA_API int rbma_solution_perfect_feasible(const rbma_solution* sol);
RBMA_API size_t rbma_solution_iterations(const rbma_solution* sol);
RBMA_API double rbma_solution_runtime_ms(const rbma_solution* sol);
RBMA_API size_t rbma_solution_fallback_rows(const rbma_solution* sol);
RBMA_API int rbma_solution_has_params(const rbma_solution* sol);

/* Fraction of rows on which both solutions choose the same column. */
RBMA_API rbma_status rbma_solution_agreement(const rbma_solution* a, const rbma_solution* b,
                                             double* out);

/* Fails with RBMA_ERR_INFEASIBLE, leaving no file, unless row-feasible. */
RBMA_API rbma_status rbma_solution_write_assignment(const rbma_solution* sol,
                                                    const rbma_instance* inst, const char* path);
/* CSV iter,rows_resolved,threshold. Header only for non-rbmaa methods. */
RBMA_API rbma_status rbma_solution_write_trace(const rbma_solution* sol, const char* path);
/* Returns a new handle, or RBMA_ERR_INVALID_ARGUMENT if no model was trained. */
RBMA_API rbma_status rbma_solution_params(const rbma_solution* sol, rbma_params** out);

/* ---- validation --------------------------------------------------------- */

/*
 * Reads an assignment CSV and checks it against `inst`. On RBMA_OK,
 * *feasible is 1 or 0. When detail is non-NULL, a NUL-terminated summary of
 * violations is written into it (truncated to detail_len).
 */
RBMA_API rbma_status rbma_validate_assignment_file(const rbma_instance* inst, const char* path,
                                                   rbma_feasibility_mode mode, int* feasible,
                                                   char* detail, size_t detail_len);

/* ---- RBM parameters ----------------------------------------------------- */

RBMA_API rbma_status rbma_params_load(const char* path, rbma_params** out);
RBMA_API rbma_status rbma_params_save(const rbma_params* params, const char* path);
RBMA_API void rbma_params_free(rbma_params* params);
RBMA_API size_t rbma_params_visible(const rbma_params* params);
RBMA_API size_t rbma_params_hidden(const rbma_params* params);
RBMA_API double rbma_params_conn(const rbma_params* params, size_t i, size_t j);
RBMA_API int rbma_params_equal(const rbma_params* a, const rbma_params* b);

/* ---- synthetic data ----------------------------------------------------- */

RBMA_API rbma_status rbma_generate_synthetic(size_t rows, size_t cols, size_t per_row,
                                             double concentration, uint64_t seed,
                                             const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* RBMA_RBMA_H */
