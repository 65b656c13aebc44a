// Copyright 2026 The qmed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMED_QMED_H
#define QMED_QMED_H

/*
 * C interface to the qmed minimum-error discrimination solver.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a qmed_status;
 * QMED_OK is zero. After a failure, qmed_last_error() returns a message for
 * the calling thread and qmed_last_error_index() the offending state or
 * element index (or -1).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QMED_BUILDING_LIBRARY)
#    define QMED_API __declspec(dllexport)
#  else
#    define QMED_API __declspec(dllimport)
#  endif
#else
#  define QMED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmed_status {
  QMED_OK = 0,
  QMED_ERR_INVALID_ARGUMENT = 1,
  QMED_ERR_PRIORS_NOT_NORMALIZED = 2,
  QMED_ERR_NEGATIVE_PRIOR = 3,
  QMED_ERR_STATE_OUTSIDE_BALL = 4,
  QMED_ERR_DEGENERATE_ALL_COINCIDENT = 5,
  QMED_ERR_INDEX_OUT_OF_RANGE = 6,
  QMED_ERR_COLLINEAR_POINTS = 7,
  QMED_ERR_SHIFT_LEAVES_BALL = 8,
  QMED_ERR_GAMMA_COINCIDES_WITH_STATE = 9,
  QMED_ERR_INFEASIBLE_ALPHA_SYSTEM = 10,
  QMED_ERR_INCOMPLETE_POVM = 11,
  QMED_ERR_SOLVER_EXHAUSTED = 12,
  QMED_ERR_PROBABILITY_OUT_OF_RANGE = 13,
  QMED_ERR_OUT_OF_PARAMETER_REGION = 14,
  QMED_ERR_WRONG_ARITY = 15,
  QMED_ERR_ANGLE_OUT_OF_RANGE = 16,
  QMED_ERR_NULL_POINTER = 17,
  QMED_ERR_INTERNAL = 18
} qmed_status;

typedef struct qmed_tolerances {
  double equality;
  double psd_margin;
  double completeness;
  double stationarity;
  double hermiticity;
  double prior_sum;
  double ball;
  double coincidence;
} qmed_tolerances;

typedef struct qmed_povm_element {
  size_t state_index;
  double alpha;
  double n_hat[3];
  /* Nonzero: the element is (alpha/2) * identity and n_hat is ignored. */
  int full_operator;
} qmed_povm_element;

typedef struct qmed_ensemble qmed_ensemble;
typedef struct qmed_solution qmed_solution;
typedef struct qmed_povm qmed_povm;
typedef struct qmed_certificate qmed_certificate;
typedef struct qmed_sample_report qmed_sample_report;

QMED_API const char* qmed_version(void);
QMED_API const char* qmed_status_string(qmed_status status);
QMED_API const char* qmed_last_error(void);
QMED_API long long qmed_last_error_index(void);

QMED_API qmed_tolerances qmed_tolerances_default(void);

/* Ensembles. priors has n entries, bloch has 3n (x, y, z per state).
 * tol may be NULL for the defaults. */
QMED_API qmed_status qmed_ensemble_create(size_t n, const double* priors,
                                          const double* bloch,
                                          const qmed_tolerances* tol,
                                          qmed_ensemble** out);
QMED_API void qmed_ensemble_destroy(qmed_ensemble* ensemble);
QMED_API size_t qmed_ensemble_size(const qmed_ensemble* ensemble);
QMED_API qmed_status qmed_ensemble_state(const qmed_ensemble* ensemble,
                                         size_t i, double* prior,
                                         double bloch[3]);
/* Moves every subnormalized Bloch vector by shift. */
QMED_API qmed_status qmed_ensemble_translate(const qmed_ensemble* ensemble,
                                             const double shift[3],
                                             const qmed_tolerances* tol,
                                             qmed_ensemble** out);
QMED_API qmed_status qmed_trine_ensemble(double p, double delta,
                                         qmed_ensemble** out);

/* Solving. */
QMED_API qmed_status qmed_solve(const qmed_ensemble* ensemble,
                                const qmed_tolerances* tol,
                                qmed_solution** out);
QMED_API void qmed_solution_destroy(qmed_solution* solution);
QMED_API double qmed_solution_p_guess(const qmed_solution* solution);
QMED_API void qmed_solution_gamma(const qmed_solution* solution,
                                  double* gamma0, double gamma[3]);
QMED_API int qmed_solution_no_measurement(const qmed_solution* solution);
QMED_API size_t qmed_solution_detected_count(const qmed_solution* solution);
QMED_API size_t qmed_solution_detected_at(const qmed_solution* solution,
                                          size_t k);
/* Free dimension of the alpha family, and per direction its coordinates
 * (length = detected count) and box interval. */
QMED_API size_t qmed_solution_free_dimension(const qmed_solution* solution);
QMED_API qmed_status qmed_solution_free_direction(
    const qmed_solution* solution, size_t k, double* direction,
    double* lo, double* hi);
QMED_API int qmed_solution_box_exact(const qmed_solution* solution);
/* Base measurement of the family. */
QMED_API qmed_status qmed_solution_povm(const qmed_solution* solution,
                                        qmed_povm** out);

/* Measurements. */
QMED_API qmed_status qmed_povm_create(size_t n,
                                      const qmed_povm_element* elements,
                                      const qmed_tolerances* tol,
                                      qmed_povm** out);
QMED_API void qmed_povm_destroy(qmed_povm* povm);
QMED_API size_t qmed_povm_size(const qmed_povm* povm);
QMED_API qmed_status qmed_povm_element_at(const qmed_povm* povm, size_t k,
                                          qmed_povm_element* out);

/* Optimality certificate. */
QMED_API qmed_status qmed_certify(const qmed_ensemble* ensemble,
                                  const qmed_povm* povm,
                                  const qmed_tolerances* tol,
                                  qmed_certificate** out);
QMED_API void qmed_certificate_destroy(qmed_certificate* cert);
QMED_API int qmed_certificate_optimal(const qmed_certificate* cert);
QMED_API void qmed_certificate_gamma(const qmed_certificate* cert,
                                     double* gamma0, double gamma[3]);
QMED_API double qmed_certificate_hermiticity(const qmed_certificate* cert);
QMED_API double qmed_certificate_completeness(const qmed_certificate* cert);
QMED_API size_t qmed_certificate_size(const qmed_certificate* cert);
QMED_API double qmed_certificate_psd_margin(const qmed_certificate* cert,
                                            size_t i);
QMED_API double qmed_certificate_stationarity(const qmed_certificate* cert,
                                              size_t i);

/* Dual oracle and geometry. */
QMED_API qmed_status qmed_dual_oracle(const qmed_ensemble* ensemble,
                                      double grid_step, double tolerance,
                                      double* gamma0_star,
                                      double gamma_star[3]);
/* Smallest enclosing sphere of n points (xyz triples). */
QMED_API qmed_status qmed_circumsphere(size_t n, const double* points,
                                       double center[3], double* radius);

/* Monte Carlo sampling. */
QMED_API qmed_status qmed_sample(const qmed_ensemble* ensemble,
                                 const qmed_povm* povm, uint64_t shots,
                                 uint64_t seed, qmed_sample_report** out);
QMED_API void qmed_sample_report_destroy(qmed_sample_report* report);
QMED_API size_t qmed_sample_report_states(const qmed_sample_report* report);
QMED_API size_t qmed_sample_report_outcomes(const qmed_sample_report* report);
QMED_API uint64_t qmed_sample_report_count(const qmed_sample_report* report,
                                           size_t state, size_t outcome);
QMED_API double qmed_sample_report_empirical(const qmed_sample_report* report);
QMED_API double qmed_sample_report_theoretical(
    const qmed_sample_report* report);
QMED_API double qmed_sample_report_z_score(const qmed_sample_report* report);

/* Trine closed forms. regime is 2 or 3 (number of detected states). */
QMED_API qmed_status qmed_trine_reference(double p, double delta,
                                          double* p_guess, int* regime,
                                          double gamma[3]);
/* Returns 0 and leaves *bound untouched when no two-element region exists. */
QMED_API int qmed_trine_boundary(double p, double* bound);

#ifdef __cplusplus
}
#endif

#endif /* QMED_QMED_H */
