#ifndef ACP_ACP_H
#define ACP_ACP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ACP_BUILDING_LIBRARY)
#    define ACP_API __declspec(dllexport)
#  else
#    define ACP_API __declspec(dllimport)
#  endif
#else
#  define ACP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acp_status {
  ACP_OK = 0,
  ACP_ERR_INVALID_ARGUMENT = 1,
  ACP_ERR_DIMENSION_MISMATCH = 2,
  ACP_ERR_REALITY_VIOLATION = 3,
  ACP_ERR_NOT_NORMAL = 4,
  ACP_ERR_SINGULAR = 5,
  ACP_ERR_AT_CENTER = 6,
  ACP_ERR_STRUCTURE_MISMATCH = 7,
  ACP_ERR_NOT_SELF_ADJOINT = 8,
  ACP_ERR_NOT_SELF_TAU = 9,
  ACP_ERR_TOO_FAR_FROM_GROUP = 10,
  ACP_ERR_EMPTY_INPUT = 11,
  ACP_ERR_PARSE = 12,
  ACP_ERR_VALIDATION = 13,
  ACP_ERR_IO = 14,
  ACP_ERR_BUFFER_TOO_SMALL = 15,
  ACP_ERR_INTERNAL = 99
} acp_status;

ACP_API const char* acp_version(void);
ACP_API const char* acp_status_name(acp_status status);
/* Message of the last failed call on this thread ("" if none). */
ACP_API const char* acp_last_error(void);

/* Strings are returned through (buf, cap, needed): needed receives the length
 * including the terminator; a NULL or short buffer yields
 * ACP_ERR_BUFFER_TOO_SMALL with needed set. */

/* ---- matrices ----------------------------------------------------------- */

typedef struct acp_matrix_t* acp_matrix;

typedef enum acp_reflection_kind {
  ACP_REFLECTION_TRANSPOSE = 0,
  ACP_REFLECTION_DUAL = 1,
  ACP_REFLECTION_GENERALIZED = 2
} acp_reflection_kind;

/* data: n*n complex entries, row-major, interleaved (re, im). */
ACP_API acp_status acp_matrix_create(size_t n, const double* data, acp_matrix* out);
ACP_API void acp_matrix_free(acp_matrix m);
ACP_API size_t acp_matrix_dim(acp_matrix m);
ACP_API acp_status acp_matrix_data(acp_matrix m, double* out, size_t len);

ACP_API acp_status acp_operator_norm(acp_matrix a, double* out);
ACP_API acp_status acp_commutator_norm(acp_matrix a, acp_matrix b, double* out);
/* s is required for ACP_REFLECTION_GENERALIZED and ignored otherwise. */
ACP_API acp_status acp_apply_reflection(acp_matrix a, acp_reflection_kind kind, acp_matrix s,
                                        acp_matrix* out);
ACP_API acp_status acp_is_self_tau(acp_matrix a, acp_reflection_kind kind, acp_matrix s,
                                   double tol, int* out);

/* ---- pairs ------------------------------------------------------------- */

typedef struct acp_pair_t* acp_pair;

ACP_API acp_status acp_pair_load(const char* path, acp_pair* out);
ACP_API acp_status acp_pair_parse(const char* json_text, acp_pair* out);
/* structure: "real", "complex" or "selfdual". */
ACP_API acp_status acp_pair_random(uint64_t seed, size_t n, const char* structure, double delta,
                                   acp_pair* out);
ACP_API void acp_pair_free(acp_pair p);
ACP_API acp_status acp_pair_info(acp_pair p, size_t* n, const char** structure);
ACP_API acp_status acp_pair_to_json(acp_pair p, char* buf, size_t cap, size_t* needed);

typedef enum acp_polish { ACP_POLISH_OFF = 0, ACP_POLISH_AUTO = 1, ACP_POLISH_ON = 2 } acp_polish;

typedef struct acp_solver_options {
  int max_sweeps;
  double rel_tol;
  acp_polish polish;
} acp_solver_options;

ACP_API void acp_solver_options_default(acp_solver_options* opts);

/* ---- correction -------------------------------------------------------- */

typedef struct acp_result_t* acp_result;

typedef struct acp_diagnostics {
  double eps_pair;
  double dist_a;
  double dist_b;
  double comm_before;
  double comm_after;
  double off_energy;
  double diagonal_residue;
  int sweeps;
  int rotations;
  int monotone;
} acp_diagnostics;

/* opts may be NULL for defaults. */
ACP_API acp_status acp_correct(acp_pair p, const acp_solver_options* opts, acp_result* out);
ACP_API acp_status acp_result_diagnostics(acp_result r, acp_diagnostics* out);
ACP_API acp_status acp_result_to_json(acp_result r, char* buf, size_t cap, size_t* needed);
ACP_API acp_status acp_result_write(acp_result r, const char* path);
ACP_API void acp_result_free(acp_result r);

/* ---- verification ------------------------------------------------------ */

typedef struct acp_report_t* acp_report;

ACP_API acp_status acp_verify_file(const char* path, acp_report* out);
ACP_API acp_status acp_verify_json(const char* json_text, acp_report* out);
ACP_API int acp_report_passed(acp_report r);
ACP_API size_t acp_report_count(acp_report r);
ACP_API acp_status acp_report_item(acp_report r, size_t i, const char** name, double* value,
                                   double* threshold, int* passed);
ACP_API acp_status acp_report_text(acp_report r, char* buf, size_t cap, size_t* needed);
ACP_API void acp_report_free(acp_report r);

/* ---- experiments ------------------------------------------------------- */

typedef struct acp_experiment_config {
  const char* const* structures;
  size_t n_structures;
  const size_t* dims;
  size_t n_dims;
  const double* deltas;
  size_t n_deltas;
  int trials;
  uint64_t seed;
  acp_solver_options solver;
  int threads;       /* 0: ACP_THREADS or all cores */
  int record_timing; /* 0 writes runtime_ms = 0 */
} acp_experiment_config;

typedef struct acp_experiment_t* acp_experiment;

ACP_API acp_status acp_experiment_run(const acp_experiment_config* cfg, acp_experiment* out);
ACP_API size_t acp_experiment_record_count(acp_experiment e);
ACP_API size_t acp_experiment_failed_count(acp_experiment e);
ACP_API acp_status acp_experiment_write_csv(acp_experiment e, const char* path);
ACP_API acp_status acp_experiment_csv(acp_experiment e, char* buf, size_t cap, size_t* needed);
ACP_API acp_status acp_experiment_summary(acp_experiment e, char* buf, size_t cap,
                                          size_t* needed);
ACP_API void acp_experiment_free(acp_experiment e);

/* ---- demo -------------------------------------------------------------- */

ACP_API acp_status acp_demo_text(char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
