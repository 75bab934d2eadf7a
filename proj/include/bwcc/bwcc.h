#ifndef BWCC_H
#define BWCC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BWCC_API __declspec(dllexport)
#else
#define BWCC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bwcc_status {
  BWCC_OK = 0,
  BWCC_ERR_DIMENSION = 1,
  BWCC_ERR_INVALID_MASS = 2,
  BWCC_ERR_SINGULAR_DISTANCE = 3,
  BWCC_ERR_INVALID_MULTIPLIER = 4,
  BWCC_ERR_DEGENERATE = 5,
  BWCC_ERR_INTEGRITY = 6,
  BWCC_ERR_UNSUPPORTED_CLASS = 7,
  BWCC_ERR_NORMALIZATION_REQUIRED = 8,
  BWCC_ERR_CONFIGURATION = 9,
  BWCC_ERR_ARGUMENT = 10, /* null pointer or index out of range */
  BWCC_ERR_INTERNAL = 11
} bwcc_status;

typedef enum bwcc_hull {
  BWCC_HULL_COLLINEAR = 0,
  BWCC_HULL_TRIANGULAR = 1,
  BWCC_HULL_QUADRILATERAL = 2,
  BWCC_HULL_STRICTLY_CONVEX = 3,
  BWCC_HULL_POLYGONAL = 4
} bwcc_hull;

typedef enum bwcc_known {
  BWCC_KNOWN_EQUILATERAL = 0,
  BWCC_KNOWN_PENTAGON = 1,
  BWCC_KNOWN_SQUARE_CENTER = 2
} bwcc_known;

typedef struct bwcc_cc bwcc_cc;
typedef struct bwcc_results bwcc_results;
typedef struct bwcc_report bwcc_report;

typedef struct bwcc_solve_options {
  double tolerance;
  int max_iterations;
  double damping;
  double min_separation;
  uint64_t seed;
} bwcc_solve_options;

/* Message of the last failed call on this thread; never null. */
BWCC_API const char* bwcc_last_error(void);
BWCC_API const char* bwcc_status_string(bwcc_status status);
BWCC_API const char* bwcc_hull_string(bwcc_hull hull);

BWCC_API void bwcc_solve_options_default(bwcc_solve_options* options);

/* Positions are interleaved x0, y0, x1, y1, ... The multiplier is derived
 * as U / I; the result is not normalized. */
BWCC_API bwcc_status bwcc_cc_create(const double* masses, const double* xy, size_t n,
                                    bwcc_cc** out);
BWCC_API bwcc_status bwcc_cc_known(bwcc_known which, double parameter, bwcc_cc** out);
BWCC_API bwcc_status bwcc_cc_normalize(const bwcc_cc* cc, bwcc_cc** out);
BWCC_API void bwcc_cc_free(bwcc_cc* cc);

BWCC_API size_t bwcc_cc_size(const bwcc_cc* cc);
/* Copy n values (n pairs for positions) into caller storage. */
BWCC_API bwcc_status bwcc_cc_masses(const bwcc_cc* cc, double* out);
BWCC_API bwcc_status bwcc_cc_positions(const bwcc_cc* cc, double* xy_out);
BWCC_API double bwcc_cc_lambda(const bwcc_cc* cc);
BWCC_API double bwcc_cc_residual(const bwcc_cc* cc);
BWCC_API int bwcc_cc_normalized(const bwcc_cc* cc);
BWCC_API bwcc_status bwcc_cc_hull(const bwcc_cc* cc, bwcc_hull* out);

/* Runs `trials` seeded solves on up to `threads` threads (0: hardware
 * concurrency). Results stay in trial order. */
BWCC_API bwcc_status bwcc_solve_campaign(const double* masses, size_t n, int trials,
                                         const bwcc_solve_options* options, unsigned threads,
                                         bwcc_results** out);
/* Trial `trial` of a campaign with these options, as a one-element set. */
BWCC_API bwcc_status bwcc_solve_trial(const double* masses, size_t n,
                                      const bwcc_solve_options* options, uint64_t trial,
                                      bwcc_results** out);
/* Converged, noncollinear results merged up to congruence. */
BWCC_API bwcc_status bwcc_results_unique(const bwcc_results* results, bwcc_results** out);
BWCC_API bwcc_status bwcc_moulton(const double* masses, size_t n, const size_t* ordering,
                                  bwcc_results** out);
BWCC_API size_t bwcc_results_count(const bwcc_results* results);
BWCC_API int bwcc_results_converged(const bwcc_results* results, size_t index);
BWCC_API int bwcc_results_iterations(const bwcc_results* results, size_t index);
/* Borrowed; valid until the result set is freed. */
BWCC_API const bwcc_cc* bwcc_results_cc(const bwcc_results* results, size_t index);
BWCC_API void bwcc_results_free(bwcc_results* results);

/* Log-uniform masses in [lo, hi], reproducible from (seed, stream). */
BWCC_API bwcc_status bwcc_random_masses(uint64_t seed, uint64_t stream, size_t n, double lo,
                                        double hi, double* out);

/* Normalizes a copy, then runs the spectral checks, the five-body identity
 * and inequality certificate and the two geometric predicates. */
BWCC_API bwcc_status bwcc_verify(const bwcc_cc* cc, bwcc_report** out);
BWCC_API void bwcc_report_free(bwcc_report* report);

BWCC_API size_t bwcc_report_eigenvalue_count(const bwcc_report* report);
BWCC_API bwcc_status bwcc_report_eigenvalues(const bwcc_report* report, double* out);
BWCC_API double bwcc_report_lambda(const bwcc_report* report);
/* 1 when the five-body certificate was computed. */
BWCC_API int bwcc_report_has_williams(const bwcc_report* report);
BWCC_API double bwcc_report_nu1(const bwcc_report* report);
BWCC_API double bwcc_report_nu2(const bwcc_report* report);
BWCC_API double bwcc_report_nu(const bwcc_report* report);
BWCC_API double bwcc_report_nu_ratio(const bwcc_report* report);
BWCC_API double bwcc_report_max_identity_residual(const bwcc_report* report);
BWCC_API double bwcc_report_min_chain_margin(const bwcc_report* report);
BWCC_API int bwcc_report_pbt_ok(const bwcc_report* report);
BWCC_API int bwcc_report_dst_ok(const bwcc_report* report);
BWCC_API int bwcc_report_verdict(const bwcc_report* report);
BWCC_API bwcc_hull bwcc_report_hull(const bwcc_report* report);

/* DOT text of the fraction graph; release with bwcc_string_free. */
BWCC_API bwcc_status bwcc_graph_dot(char** out);
/* vertices, edges, triangles, pentagons, min degree, max degree */
BWCC_API bwcc_status bwcc_graph_census(size_t out[6]);
BWCC_API void bwcc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
