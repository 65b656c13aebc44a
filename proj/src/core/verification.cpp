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

#include "verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"

namespace qmed {

namespace {

std::vector<Mat2c> elements_by_state(std::size_t n, const Povm& povm) {
  std::vector<Mat2c> pis(n, Mat2c::Zero());
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const auto& e = povm.elements()[k];
    if (e.state_index >= n) {
      std::ostringstream os;
      os << "POVM element " << k << " refers to state " << e.state_index
         << " but the ensemble has " << n << " states";
      throw Error(ErrorCode::IndexOutOfRange, os.str(), k);
    }
    pis[e.state_index] += e.matrix();
  }
  return pis;
}

}  // namespace

double CertificateReport::worst_psd_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : psd_margins) m = std::min(m, x);
  return m;
}

double CertificateReport::worst_stationarity() const {
  double m = 0.0;
  for (double x : stationarity_residuals) m = std::max(m, x);
  return m;
}

CertificateReport certify(std::span<const WeightedPoint> points,
                          const Povm& povm, const Tolerances& tol) {
  const std::size_t n = points.size();
  const auto pis = elements_by_state(n, povm);

  std::vector<Mat2c> weighted(n);
  Mat2c gamma_raw = Mat2c::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    weighted[i] = operator_of(points[i].prior, points[i].v_tilde);
    gamma_raw += weighted[i] * pis[i];
  }

  CertificateReport r;
  r.hermiticity_residual = (gamma_raw - gamma_raw.adjoint()).cwiseAbs().maxCoeff();
  const Mat2c gamma = 0.5 * (gamma_raw + gamma_raw.adjoint());
  const BlochForm form = bloch_form(gamma);
  r.gamma0 = form.scalar;
  r.gamma = form.vec;

  r.psd_margins.resize(n);
  r.stationarity_residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2c slack = gamma - weighted[i];
    r.psd_margins[i] = hermitian_eigenvalues(slack)[0];
    r.stationarity_residuals[i] = operator_norm(slack * pis[i]);
  }
  r.completeness_residual =
      (povm.total() - Mat2c::Identity()).cwiseAbs().maxCoeff();

  r.optimal = r.hermiticity_residual <= tol.hermiticity &&
              r.completeness_residual <= tol.completeness &&
              r.worst_psd_margin() >= tol.psd_margin &&
              r.worst_stationarity() <= tol.stationarity;
  return r;
}

CertificateReport certify(const Ensemble& ensemble, const Povm& povm,
                          const Tolerances& tol) {
  const auto pts = ensemble.points();
  return certify(std::span<const WeightedPoint>(pts), povm, tol);
}

// ---------------------------------------------------------------------------

double dual_objective(std::span<const WeightedPoint> points, const Vec3& gamma) {
  double f = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    f = std::max(f, p.prior + (p.v_tilde - gamma).norm());
  }
  return f;
}

namespace {

struct SimplexResult {
  Vec3 x;
  double f;
};

// Nelder-Mead with the usual reflection/expansion/contraction/shrink steps.
template <class F>
SimplexResult nelder_mead(const F& f, const Vec3& start, double size,
                          double xtol, int max_iter) {
  std::array<Vec3, 4> x;
  std::array<double, 4> fx;
  x[0] = start;
  for (int k = 0; k < 3; ++k) {
    x[k + 1] = start;
    x[k + 1][k] += size;
  }
  for (int k = 0; k < 4; ++k) fx[k] = f(x[k]);

  std::array<int, 4> idx{0, 1, 2, 3};
  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = idx[0], second_worst = idx[2], worst = idx[3];

    double diameter = 0.0;
    for (int k = 1; k < 4; ++k) {
      diameter = std::max(diameter, (x[idx[k]] - x[best]).cwiseAbs().maxCoeff());
    }
    if (diameter <= xtol) break;

    const Vec3 centroid = (x[idx[0]] + x[idx[1]] + x[idx[2]]) / 3.0;
    const Vec3 xr = centroid + (centroid - x[worst]);
    const double fr = f(xr);
    if (fr < fx[best]) {
      const Vec3 xe = centroid + 2.0 * (centroid - x[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second_worst]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const Vec3 xc = outside ? Vec3(centroid + 0.5 * (xr - centroid))
                            : Vec3(centroid + 0.5 * (x[worst] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (int k = 1; k < 4; ++k) {
      x[idx[k]] = x[best] + 0.5 * (x[idx[k]] - x[best]);
      fx[idx[k]] = f(x[idx[k]]);
    }
  }
  int best = 0;
  for (int k = 1; k < 4; ++k) {
    if (fx[k] < fx[best]) best = k;
  }
  return {x[best], fx[best]};
}

}  // namespace

OracleResult dual_oracle(std::span<const WeightedPoint> points,
                         const OracleOptions& options) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "dual oracle needs at least one state");
  }
  Vec3 lo = points[0].v_tilde;
  Vec3 hi = points[0].v_tilde;
  for (const auto& p : points) {
    lo = lo.cwiseMin(p.v_tilde);
    hi = hi.cwiseMax(p.v_tilde);
  }

  std::array<int, 3> counts{};
  std::array<double, 3> steps{};
  for (int k = 0; k < 3; ++k) {
    const double extent = hi[k] - lo[k];
    counts[k] = static_cast<int>(std::ceil(extent / options.grid_step)) + 1;
    steps[k] = counts[k] > 1 ? extent / (counts[k] - 1) : 0.0;
  }

  const auto f = [&](const Vec3& g) { return dual_objective(points, g); };

  Vec3 best = lo;
  double f_best = f(best);
  for (int i = 0; i < counts[0]; ++i) {
    for (int j = 0; j < counts[1]; ++j) {
      for (int k = 0; k < counts[2]; ++k) {
        const Vec3 g(lo[0] + i * steps[0], lo[1] + j * steps[1],
                     lo[2] + k * steps[2]);
        const double fg = f(g);
        if (fg < f_best) {
          f_best = fg;
          best = g;
        }
      }
    }
  }

  // A simplex can stall on the kinks of a max-function; restarting with a
  // fresh simplex at the incumbent gets it moving again.
  double size = options.grid_step;
  int quiet_rounds = 0;
  for (int restart = 0; restart < 200 && quiet_rounds < 3; ++restart) {
    const auto r = nelder_mead(f, best, size, 0.1 * options.tolerance, 4000);
    if (r.f < f_best - 1e-16) {
      quiet_rounds = 0;
      f_best = r.f;
      best = r.x;
    } else {
      ++quiet_rounds;
    }
    size = std::max(size * 0.5, 10.0 * options.tolerance);
  }
  return {f_best, best};
}

OracleResult dual_oracle(const Ensemble& ensemble, const OracleOptions& options) {
  const auto pts = ensemble.points();
  return dual_oracle(std::span<const WeightedPoint>(pts), options);
}

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> outcome_probabilities(const Ensemble& ensemble,
                                                       const Povm& povm) {
  const std::size_t n = ensemble.size();
  std::vector<std::vector<double>> prob(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const auto& e = povm.elements()[k];
    if (e.state_index >= n) {
      std::ostringstream os;
      os << "POVM element " << k << " refers to state " << e.state_index
         << " but the ensemble has " << n << " states";
      throw Error(ErrorCode::IndexOutOfRange, os.str(), k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double overlap = e.full_operator ? 0.0 : e.n_hat.dot(ensemble[i].v);
      prob[i][e.state_index] += 0.5 * e.alpha * (1.0 + overlap);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double q = prob[i][j];
      if (!(q >= -1e-12 && q <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "P(" << j << "|" << i << ") = " << q << " is not a probability";
        throw Error(ErrorCode::ProbabilityOutOfRange, os.str(), i);
      }
      prob[i][j] = std::clamp(q, 0.0, 1.0);
    }
  }
  return prob;
}

SampleReport sample_outcomes(const Ensemble& ensemble, const Povm& povm,
                             std::uint64_t shots_per_state, std::uint64_t seed) {
  if (shots_per_state == 0) {
    throw Error(ErrorCode::InvalidArgument, "shots per state must be positive");
  }
  const auto prob = outcome_probabilities(ensemble, povm);
  const std::size_t n = ensemble.size();

  SampleReport r;
  r.shots = shots_per_state;
  r.seed = seed;
  r.confusion.assign(n, std::vector<std::uint64_t>(n, 0));

  std::mt19937_64 rng(seed);
  std::vector<double> cumulative(n);
  double variance = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += prob[i][j];
      cumulative[j] = acc;
    }
    // Rounding can leave the total a hair below one; the last outcome with
    // nonzero probability absorbs it.
    std::size_t last = n - 1;
    while (last > 0 && prob[i][last] == 0.0) --last;
    for (std::size_t j = last; j < n; ++j) cumulative[j] = 2.0;

    for (std::uint64_t s = 0; s < shots_per_state; ++s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      ++r.confusion[i][static_cast<std::size_t>(it - cumulative.begin())];
    }

    const double p = ensemble[i].prior;
    const double q = prob[i][i];
    r.theoretical_success += p * q;
    r.empirical_success += p * static_cast<double>(r.confusion[i][i]) /
                           static_cast<double>(shots_per_state);
    variance += p * p * q * (1.0 - q) / static_cast<double>(shots_per_state);
  }

  const double diff = r.empirical_success - r.theoretical_success;
  if (variance > 0.0) {
    r.z_score = diff / std::sqrt(variance);
  } else if (std::abs(diff) > 1e-15) {
    r.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::array<Vec3, 3> trine_bloch_vectors() {
  const double s = std::sqrt(3.0) / 2.0;
  return {Vec3(0.0, 0.0, 1.0), Vec3(s, 0.0, -0.5), Vec3(-s, 0.0, -0.5)};
}

namespace {

void check_trine_region(double p, double delta) {
  constexpr double slack = 1e-12;
  const bool ok = p >= 1.0 / 3.0 - slack && p <= 0.5 + slack &&
                  delta >= -slack &&
                  delta <= std::min(3.0 * p - 1.0, p) + slack;
  if (!ok) {
    std::ostringstream os;
    os << "(p, delta) = (" << p << ", " << delta
       << ") outside 1/3 <= p <= 1/2, 0 <= delta <= min(3p - 1, p)";
    throw Error(ErrorCode::OutOfParameterRegion, os.str());
  }
}

}  // namespace

Ensemble trine_ensemble(double p, double delta) {
  check_trine_region(p, delta);
  const auto v = trine_bloch_vectors();
  const std::array<StateSpec, 3> specs{StateSpec{p + delta, v[0]},
                                       StateSpec{std::max(0.0, p - delta), v[1]},
                                       StateSpec{std::max(0.0, 1.0 - 2.0 * p), v[2]}};
  return Ensemble::make(specs);
}

const char* to_string(TrineRegime regime) noexcept {
  return regime == TrineRegime::TwoElement ? "two_element" : "three_element";
}

std::optional<double> trine_boundary(double p) {
  const double radicand =
      2.0 - 6.0 * p + 5.0 * p * p -
      2.0 * (1.0 - 2.0 * p) * std::sqrt(4.0 * p * p - 2.0 * p + 1.0);
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

TrineReference trine_reference(double p, double delta) {
  check_trine_region(p, delta);
  TrineReference r;
  const auto bound = trine_boundary(p);
  if (bound && delta <= *bound) {
    r.regime = TrineRegime::TwoElement;
    r.p_guess = 0.5 * std::sqrt(3.0 * p * p + delta * delta) + p;
    // Pair (1, 2) point on the focal segment.
    const auto v = trine_bloch_vectors();
    const double p1 = p + delta, p2 = p - delta;
    const Vec3 t1 = p1 * v[0], t2 = p2 * v[1];
    const double d = (t1 - t2).norm();
    r.gamma = 0.5 * ((t1 + t2) + (p1 - p2) * (t1 - t2) / d);
    return r;
  }
  r.regime = TrineRegime::ThreeElement;
  const double p2 = p * p, d2 = delta * delta;
  const double den = 9.0 * p2 * p2 - 4.0 * p2 * p + 6.0 * p2 * d2 -
                     12.0 * p * d2 + 4.0 * d2 + d2 * d2;
  const double q = 1.0 - 2.0 * p;
  r.gamma.x() = 2.0 * std::sqrt(3.0) * q * (p - delta) * (p + delta) *
                (p + delta) * (delta - 3.0 * p + 1.0) / den;
  r.gamma.y() = 0.0;
  r.gamma.z() = 2.0 * q * (p2 - d2) *
                (-3.0 * p2 + (6.0 * delta + 1.0) * p + d2 - 3.0 * delta) / den;
  r.p_guess = 2.0 * q * (p2 - d2) * (3.0 * p2 + d2 - 2.0 * p) / den;
  return r;
}

double helstrom_two_state(const Ensemble& ensemble) {
  if (ensemble.size() != 2) {
    std::ostringstream os;
    os << "two-state Helstrom bound needs exactly 2 states, got " << ensemble.size();
    throw Error(ErrorCode::WrongArity, os.str());
  }
  const double d = (ensemble[0].v_tilde - ensemble[1].v_tilde).norm();
  return std::max(ensemble.max_prior(), 0.5 * (1.0 + d));
}

std::array<Vec3, 4> four_symmetric_bloch_vectors(double theta) {
  return {Vec3(0.0, 0.0, 1.0), Vec3(std::sin(theta), 0.0, std::cos(theta)),
          Vec3(0.0, 0.0, -1.0), Vec3(-std::sin(theta), 0.0, std::cos(theta))};
}

Ensemble four_symmetric_ensemble(double theta) {
  const auto v = four_symmetric_bloch_vectors(theta);
  std::array<StateSpec, 4> specs;
  for (std::size_t i = 0; i < 4; ++i) specs[i] = {0.25, v[i]};
  return Ensemble::make(specs);
}

FourSymmetricReference four_symmetric_reference(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12)) {
    std::ostringstream os;
    os << "theta = " << theta << " outside [0, pi/2]";
    throw Error(ErrorCode::AngleOutOfRange, os.str());
  }
  FourSymmetricReference r;
  const double c = std::cos(theta);
  const double upper = 1.0 / (1.0 + c);
  r.alpha4 = {0.0, upper};
  // alpha_{1,3} = 1 - (1 +- cos t) alpha_4, alpha_2 = alpha_4.
  const auto family = [c](double a4) {
    return std::array<double, 4>{1.0 - (1.0 + c) * a4, a4, 1.0 - (1.0 - c) * a4, a4};
  };
  r.lower_extreme = family(0.0);
  r.upper_extreme = {0.0, upper, 2.0 * c / (1.0 + c), upper};
  r.degenerate = theta < 1e-12;

  if (std::abs(theta - std::numbers::pi / 2) < 1e-12) {
    const auto v = four_symmetric_bloch_vectors(std::numbers::pi / 2);
    r.pi_half_split = std::array<Povm, 2>{
        Povm::unchecked({{0, 1.0, v[0], false}, {2, 1.0, v[2], false}}),
        Povm::unchecked({{1, 1.0, v[1], false}, {3, 1.0, v[3], false}})};
  }
  return r;
}

std::array<Vec3, 3> ThreeStateCanonical::subnormalized() const {
  return {priors[0] * Vec3(0.0, 0.0, a),
          priors[1] * Vec3(b * std::sin(theta), 0.0, b * std::cos(theta)),
          priors[2] * Vec3(-c * std::sin(phi), 0.0, c * std::cos(phi))};
}

Ensemble ThreeStateCanonical::ensemble() const {
  const std::array<StateSpec, 3> specs{
      StateSpec{priors[0], Vec3(0.0, 0.0, a)},
      StateSpec{priors[1], Vec3(b * std::sin(theta), 0.0, b * std::cos(theta))},
      StateSpec{priors[2], Vec3(-c * std::sin(phi), 0.0, c * std::cos(phi))}};
  return Ensemble::make(specs);
}

}  // namespace qmed
