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

#include "qmed/qmed.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "model.hpp"
#include "solver.hpp"
#include "verification.hpp"

struct qmed_ensemble {
  qmed::Ensemble value;
};

struct qmed_solution {
  qmed::Solution value;
};

struct qmed_povm {
  qmed::Povm value;
};

struct qmed_certificate {
  qmed::CertificateReport value;
};

struct qmed_sample_report {
  qmed::SampleReport value;
};

namespace {

thread_local std::string g_last_error;
thread_local long long g_last_index = -1;

qmed_status to_status(qmed::ErrorCode code) {
  using qmed::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QMED_ERR_INVALID_ARGUMENT;
    case ErrorCode::PriorsNotNormalized: return QMED_ERR_PRIORS_NOT_NORMALIZED;
    case ErrorCode::NegativePrior: return QMED_ERR_NEGATIVE_PRIOR;
    case ErrorCode::StateOutsideBall: return QMED_ERR_STATE_OUTSIDE_BALL;
    case ErrorCode::DegenerateAllCoincident: return QMED_ERR_DEGENERATE_ALL_COINCIDENT;
    case ErrorCode::IndexOutOfRange: return QMED_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::CollinearPoints: return QMED_ERR_COLLINEAR_POINTS;
    case ErrorCode::ShiftLeavesBall: return QMED_ERR_SHIFT_LEAVES_BALL;
    case ErrorCode::GammaCoincidesWithState: return QMED_ERR_GAMMA_COINCIDES_WITH_STATE;
    case ErrorCode::InfeasibleAlphaSystem: return QMED_ERR_INFEASIBLE_ALPHA_SYSTEM;
    case ErrorCode::IncompletePovm: return QMED_ERR_INCOMPLETE_POVM;
    case ErrorCode::SolverExhausted: return QMED_ERR_SOLVER_EXHAUSTED;
    case ErrorCode::ProbabilityOutOfRange: return QMED_ERR_PROBABILITY_OUT_OF_RANGE;
    case ErrorCode::OutOfParameterRegion: return QMED_ERR_OUT_OF_PARAMETER_REGION;
    case ErrorCode::WrongArity: return QMED_ERR_WRONG_ARITY;
    case ErrorCode::AngleOutOfRange: return QMED_ERR_ANGLE_OUT_OF_RANGE;
  }
  return QMED_ERR_INTERNAL;
}

qmed_status fail(qmed_status status, const std::string& message,
                 long long index = -1) {
  g_last_error = message;
  g_last_index = index;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
qmed_status guarded(F&& body) {
  try {
    g_last_error.clear();
    g_last_index = -1;
    body();
    return QMED_OK;
  } catch (const qmed::Error& e) {
    return fail(to_status(e.code()), e.what(),
                e.index() ? static_cast<long long>(*e.index()) : -1);
  } catch (const std::bad_alloc&) {
    return fail(QMED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QMED_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QMED_ERR_INTERNAL, "unknown failure");
  }
}

qmed::Tolerances tolerances_of(const qmed_tolerances* tol) {
  qmed::Tolerances out;
  if (tol) {
    out.equality = tol->equality;
    out.psd_margin = tol->psd_margin;
    out.completeness = tol->completeness;
    out.stationarity = tol->stationarity;
    out.hermiticity = tol->hermiticity;
    out.prior_sum = tol->prior_sum;
    out.ball = tol->ball;
    out.coincidence = tol->coincidence;
  }
  return out;
}

void copy3(const qmed::Vec3& v, double out[3]) {
  out[0] = v.x();
  out[1] = v.y();
  out[2] = v.z();
}

#define QMED_REQUIRE(ptr)                                              \
  do {                                                                 \
    if (!(ptr)) return fail(QMED_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* qmed_version(void) { return "0.1.0"; }

const char* qmed_status_string(qmed_status status) {
  switch (status) {
    case QMED_OK: return "ok";
    case QMED_ERR_NULL_POINTER: return "null pointer";
    case QMED_ERR_INTERNAL: return "internal error";
    default: break;
  }
  if (status >= QMED_ERR_INVALID_ARGUMENT && status <= QMED_ERR_ANGLE_OUT_OF_RANGE) {
    return qmed::to_string(static_cast<qmed::ErrorCode>(status - 1));
  }
  return "unknown status";
}

const char* qmed_last_error(void) { return g_last_error.c_str(); }

long long qmed_last_error_index(void) { return g_last_index; }

qmed_tolerances qmed_tolerances_default(void) {
  const qmed::Tolerances t;
  return {t.equality, t.psd_margin, t.completeness, t.stationarity,
          t.hermiticity, t.prior_sum, t.ball, t.coincidence};
}

qmed_status qmed_ensemble_create(size_t n, const double* priors, const double* bloch,
                                 const qmed_tolerances* tol, qmed_ensemble** out) {
  QMED_REQUIRE(out);
  if (n > 0) {
    QMED_REQUIRE(priors);
    QMED_REQUIRE(bloch);
  }
  return guarded([&] {
    std::vector<qmed::StateSpec> specs(n);
    for (size_t i = 0; i < n; ++i) {
      specs[i].prior = priors[i];
      specs[i].bloch = qmed::Vec3(bloch[3 * i], bloch[3 * i + 1], bloch[3 * i + 2]);
    }
    *out = new qmed_ensemble{qmed::Ensemble::make(specs, tolerances_of(tol))};
  });
}

void qmed_ensemble_destroy(qmed_ensemble* ensemble) { delete ensemble; }

size_t qmed_ensemble_size(const qmed_ensemble* ensemble) {
  return ensemble ? ensemble->value.size() : 0;
}

qmed_status qmed_ensemble_state(const qmed_ensemble* ensemble, size_t i, double* prior,
                                double bloch[3]) {
  QMED_REQUIRE(ensemble);
  if (i >= ensemble->value.size()) {
    return fail(QMED_ERR_INDEX_OUT_OF_RANGE, "state index out of range",
                static_cast<long long>(i));
  }
  if (prior) *prior = ensemble->value[i].prior;
  if (bloch) copy3(ensemble->value[i].v, bloch);
  return QMED_OK;
}

qmed_status qmed_ensemble_translate(const qmed_ensemble* ensemble, const double shift[3],
                                    const qmed_tolerances* tol, qmed_ensemble** out) {
  QMED_REQUIRE(ensemble);
  QMED_REQUIRE(shift);
  QMED_REQUIRE(out);
  return guarded([&] {
    *out = new qmed_ensemble{qmed::translate_ensemble(
        ensemble->value, qmed::Vec3(shift[0], shift[1], shift[2]), tolerances_of(tol))};
  });
}

qmed_status qmed_trine_ensemble(double p, double delta, qmed_ensemble** out) {
  QMED_REQUIRE(out);
  return guarded([&] { *out = new qmed_ensemble{qmed::trine_ensemble(p, delta)}; });
}

qmed_status qmed_solve(const qmed_ensemble* ensemble, const qmed_tolerances* tol,
                       qmed_solution** out) {
  QMED_REQUIRE(ensemble);
  QMED_REQUIRE(out);
  return guarded([&] {
    *out = new qmed_solution{qmed::solve(ensemble->value, tolerances_of(tol))};
  });
}

void qmed_solution_destroy(qmed_solution* solution) { delete solution; }

double qmed_solution_p_guess(const qmed_solution* solution) {
  return solution ? solution->value.p_guess : 0.0;
}

void qmed_solution_gamma(const qmed_solution* solution, double* gamma0, double gamma[3]) {
  if (!solution) return;
  if (gamma0) *gamma0 = solution->value.candidate.gamma0;
  if (gamma) copy3(solution->value.candidate.gamma, gamma);
}

int qmed_solution_no_measurement(const qmed_solution* solution) {
  return solution && solution->value.no_measurement ? 1 : 0;
}

size_t qmed_solution_detected_count(const qmed_solution* solution) {
  return solution ? solution->value.detected.size() : 0;
}

size_t qmed_solution_detected_at(const qmed_solution* solution, size_t k) {
  if (!solution || k >= solution->value.detected.size()) return static_cast<size_t>(-1);
  return solution->value.detected[k];
}

size_t qmed_solution_free_dimension(const qmed_solution* solution) {
  return solution ? solution->value.povm_family.free_dimension() : 0;
}

qmed_status qmed_solution_free_direction(const qmed_solution* solution, size_t k,
                                         double* direction, double* lo, double* hi) {
  QMED_REQUIRE(solution);
  const auto& fam = solution->value.povm_family;
  if (k >= fam.free_dimension()) {
    return fail(QMED_ERR_INDEX_OUT_OF_RANGE, "free direction index out of range",
                static_cast<long long>(k));
  }
  if (direction) {
    const auto& d = fam.free_directions[k];
    for (Eigen::Index j = 0; j < d.size(); ++j) direction[j] = d[j];
  }
  if (lo) *lo = fam.box[k].lo;
  if (hi) *hi = fam.box[k].hi;
  return QMED_OK;
}

int qmed_solution_box_exact(const qmed_solution* solution) {
  return solution && solution->value.povm_family.box_exact ? 1 : 0;
}

qmed_status qmed_solution_povm(const qmed_solution* solution, qmed_povm** out) {
  QMED_REQUIRE(solution);
  QMED_REQUIRE(out);
  return guarded([&] { *out = new qmed_povm{solution->value.povm()}; });
}

qmed_status qmed_povm_create(size_t n, const qmed_povm_element* elements,
                             const qmed_tolerances* tol, qmed_povm** out) {
  QMED_REQUIRE(out);
  if (n > 0) QMED_REQUIRE(elements);
  return guarded([&] {
    std::vector<qmed::PovmElement> els(n);
    for (size_t k = 0; k < n; ++k) {
      els[k].state_index = elements[k].state_index;
      els[k].alpha = elements[k].alpha;
      els[k].n_hat = qmed::Vec3(elements[k].n_hat[0], elements[k].n_hat[1],
                                elements[k].n_hat[2]);
      els[k].full_operator = elements[k].full_operator != 0;
    }
    *out = new qmed_povm{qmed::Povm::make(std::move(els), tolerances_of(tol))};
  });
}

void qmed_povm_destroy(qmed_povm* povm) { delete povm; }

size_t qmed_povm_size(const qmed_povm* povm) { return povm ? povm->value.size() : 0; }

qmed_status qmed_povm_element_at(const qmed_povm* povm, size_t k, qmed_povm_element* out) {
  QMED_REQUIRE(povm);
  QMED_REQUIRE(out);
  if (k >= povm->value.size()) {
    return fail(QMED_ERR_INDEX_OUT_OF_RANGE, "element index out of range",
                static_cast<long long>(k));
  }
  const auto& e = povm->value.elements()[k];
  out->state_index = e.state_index;
  out->alpha = e.alpha;
  copy3(e.n_hat, out->n_hat);
  out->full_operator = e.full_operator ? 1 : 0;
  return QMED_OK;
}

qmed_status qmed_certify(const qmed_ensemble* ensemble, const qmed_povm* povm,
                         const qmed_tolerances* tol, qmed_certificate** out) {
  QMED_REQUIRE(ensemble);
  QMED_REQUIRE(povm);
  QMED_REQUIRE(out);
  return guarded([&] {
    *out = new qmed_certificate{
        qmed::certify(ensemble->value, povm->value, tolerances_of(tol))};
  });
}

void qmed_certificate_destroy(qmed_certificate* cert) { delete cert; }

int qmed_certificate_optimal(const qmed_certificate* cert) {
  return cert && cert->value.optimal ? 1 : 0;
}

void qmed_certificate_gamma(const qmed_certificate* cert, double* gamma0,
                            double gamma[3]) {
  if (!cert) return;
  if (gamma0) *gamma0 = cert->value.gamma0;
  if (gamma) copy3(cert->value.gamma, gamma);
}

double qmed_certificate_hermiticity(const qmed_certificate* cert) {
  return cert ? cert->value.hermiticity_residual : 0.0;
}

double qmed_certificate_completeness(const qmed_certificate* cert) {
  return cert ? cert->value.completeness_residual : 0.0;
}

size_t qmed_certificate_size(const qmed_certificate* cert) {
  return cert ? cert->value.psd_margins.size() : 0;
}

double qmed_certificate_psd_margin(const qmed_certificate* cert, size_t i) {
  if (!cert || i >= cert->value.psd_margins.size()) return 0.0;
  return cert->value.psd_margins[i];
}

double qmed_certificate_stationarity(const qmed_certificate* cert, size_t i) {
  if (!cert || i >= cert->value.stationarity_residuals.size()) return 0.0;
  return cert->value.stationarity_residuals[i];
}

qmed_status qmed_dual_oracle(const qmed_ensemble* ensemble, double grid_step,
                             double tolerance, double* gamma0_star, double gamma_star[3]) {
  QMED_REQUIRE(ensemble);
  return guarded([&] {
    qmed::OracleOptions opts;
    if (grid_step > 0.0) opts.grid_step = grid_step;
    if (tolerance > 0.0) opts.tolerance = tolerance;
    const auto r = qmed::dual_oracle(ensemble->value, opts);
    if (gamma0_star) *gamma0_star = r.gamma0_star;
    if (gamma_star) copy3(r.gamma_star, gamma_star);
  });
}

qmed_status qmed_circumsphere(size_t n, const double* points, double center[3],
                              double* radius) {
  if (n > 0) QMED_REQUIRE(points);
  return guarded([&] {
    std::vector<qmed::Vec3> pts(n);
    for (size_t i = 0; i < n; ++i) {
      pts[i] = qmed::Vec3(points[3 * i], points[3 * i + 1], points[3 * i + 2]);
    }
    const auto s = qmed::circumsphere(pts);
    if (center) copy3(s.center, center);
    if (radius) *radius = s.radius;
  });
}

qmed_status qmed_sample(const qmed_ensemble* ensemble, const qmed_povm* povm,
                        uint64_t shots, uint64_t seed, qmed_sample_report** out) {
  QMED_REQUIRE(ensemble);
  QMED_REQUIRE(povm);
  QMED_REQUIRE(out);
  return guarded([&] {
    *out = new qmed_sample_report{
        qmed::sample_outcomes(ensemble->value, povm->value, shots, seed)};
  });
}

void qmed_sample_report_destroy(qmed_sample_report* report) { delete report; }

size_t qmed_sample_report_states(const qmed_sample_report* report) {
  return report ? report->value.confusion.size() : 0;
}

size_t qmed_sample_report_outcomes(const qmed_sample_report* report) {
  if (!report || report->value.confusion.empty()) return 0;
  return report->value.confusion.front().size();
}

uint64_t qmed_sample_report_count(const qmed_sample_report* report, size_t state,
                                  size_t outcome) {
  if (!report || state >= report->value.confusion.size()) return 0;
  const auto& row = report->value.confusion[state];
  return outcome < row.size() ? row[outcome] : 0;
}

double qmed_sample_report_empirical(const qmed_sample_report* report) {
  return report ? report->value.empirical_success : 0.0;
}

double qmed_sample_report_theoretical(const qmed_sample_report* report) {
  return report ? report->value.theoretical_success : 0.0;
}

double qmed_sample_report_z_score(const qmed_sample_report* report) {
  return report ? report->value.z_score : 0.0;
}

qmed_status qmed_trine_reference(double p, double delta, double* p_guess, int* regime,
                                 double gamma[3]) {
  return guarded([&] {
    const auto r = qmed::trine_reference(p, delta);
    if (p_guess) *p_guess = r.p_guess;
    if (regime) *regime = r.regime == qmed::TrineRegime::TwoElement ? 2 : 3;
    if (gamma) copy3(r.gamma, gamma);
  });
}

int qmed_trine_boundary(double p, double* bound) {
  const auto b = qmed::trine_boundary(p);
  if (!b) return 0;
  if (bound) *bound = *b;
  return 1;
}

}  // extern "C"
