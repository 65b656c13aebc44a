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

#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace qmed {

namespace {

using cd = std::complex<double>;

constexpr double kDroppedAlpha = 1e-14;

}  // namespace

Ensemble Ensemble::make(std::span<const StateSpec> entries,
                        const Tolerances& tol) {
  if (entries.empty()) {
    throw Error(ErrorCode::InvalidArgument, "ensemble must have at least one state");
  }
  std::vector<EnsembleState> states;
  states.reserve(entries.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!std::isfinite(e.prior) || !e.bloch.allFinite()) {
      std::ostringstream os;
      os << "state " << i << ": non-finite prior or Bloch vector";
      throw Error(ErrorCode::InvalidArgument, os.str(), i);
    }
    if (e.prior < 0.0) {
      std::ostringstream os;
      os << "state " << i << ": negative prior " << e.prior;
      throw Error(ErrorCode::NegativePrior, os.str(), i);
    }
    if (e.prior > 1.0 + tol.prior_sum) {
      std::ostringstream os;
      os << "state " << i << ": prior " << e.prior << " exceeds 1";
      throw Error(ErrorCode::PriorsNotNormalized, os.str(), i);
    }
    const double norm = e.bloch.norm();
    if (norm > 1.0 + tol.ball) {
      std::ostringstream os;
      os << "state " << i << ": Bloch vector norm " << norm
         << " lies outside the unit ball";
      throw Error(ErrorCode::StateOutsideBall, os.str(), i);
    }
    sum += e.prior;
    states.push_back({e.prior, e.bloch, e.prior * e.bloch});
  }
  if (std::abs(sum - 1.0) > tol.prior_sum) {
    std::ostringstream os;
    os.precision(17);
    os << "priors sum to " << sum << ", expected 1";
    throw Error(ErrorCode::PriorsNotNormalized, os.str());
  }
  return Ensemble(std::move(states));
}

std::vector<WeightedPoint> Ensemble::points() const {
  std::vector<WeightedPoint> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back({s.prior, s.v_tilde});
  return out;
}

double Ensemble::max_prior() const noexcept {
  double m = 0.0;
  for (const auto& s : states_) m = std::max(m, s.prior);
  return m;
}

Ensemble make_ensemble(std::span<const StateSpec> entries,
                       const Tolerances& tol) {
  return Ensemble::make(entries, tol);
}

const std::array<Mat2c, 3>& pauli() {
  static const std::array<Mat2c, 3> sigma = [] {
    std::array<Mat2c, 3> s;
    s[0] << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);
    s[1] << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
    s[2] << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
    return s;
  }();
  return sigma;
}

Mat2c operator_of(double scalar, const Vec3& vec) {
  // Written out entrywise so that real inputs give exactly real diagonals.
  Mat2c m;
  m(0, 0) = cd(0.5 * (scalar + vec.z()), 0.0);
  m(1, 1) = cd(0.5 * (scalar - vec.z()), 0.0);
  m(0, 1) = cd(0.5 * vec.x(), -0.5 * vec.y());
  m(1, 0) = cd(0.5 * vec.x(), 0.5 * vec.y());
  return m;
}

BlochForm bloch_form(const Mat2c& a) {
  BlochForm f;
  f.scalar = (a(0, 0) + a(1, 1)).real();
  f.vec.x() = (a(0, 1) + a(1, 0)).real();
  f.vec.y() = (cd(0, 1) * (a(0, 1) - a(1, 0))).real();
  f.vec.z() = (a(0, 0) - a(1, 1)).real();
  return f;
}

Mat2c density_matrix_of(const Vec3& v, const Tolerances& tol) {
  const double norm = v.norm();
  if (!(norm <= 1.0 + tol.ball)) {
    std::ostringstream os;
    os << "Bloch vector norm " << norm << " lies outside the unit ball";
    throw Error(ErrorCode::StateOutsideBall, os.str());
  }
  return operator_of(1.0, v);
}

std::array<double, 2> hermitian_eigenvalues(const Mat2c& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cd b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
  return {mean - half_gap, mean + half_gap};
}

double operator_norm(const Mat2c& m) {
  const Mat2c g = m.adjoint() * m;
  return std::sqrt(std::max(0.0, hermitian_eigenvalues(g)[1]));
}

Mat2c PovmElement::matrix() const {
  if (full_operator) return operator_of(alpha, Vec3::Zero());
  return operator_of(alpha, alpha * n_hat);
}

Povm Povm::make(std::vector<PovmElement> elements, const Tolerances& tol) {
  if (elements.empty()) {
    throw Error(ErrorCode::InvalidArgument, "POVM has no elements");
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& e = elements[k];
    std::ostringstream os;
    os << "element " << k << " (state " << e.state_index << "): ";
    if (!std::isfinite(e.alpha) || !e.n_hat.allFinite()) {
      os << "non-finite field";
      throw Error(ErrorCode::InvalidArgument, os.str(), k);
    }
    const double upper = e.full_operator ? 2.0 : 1.0;
    if (e.alpha < -tol.ball || e.alpha > upper + tol.ball) {
      os << "alpha " << e.alpha << " outside [0, " << upper << "]";
      throw Error(ErrorCode::InvalidArgument, os.str(), k);
    }
    if (!e.full_operator && std::abs(e.n_hat.norm() - 1.0) > tol.ball) {
      os << "n_hat is not a unit vector (norm " << e.n_hat.norm() << ")";
      throw Error(ErrorCode::InvalidArgument, os.str(), k);
    }
  }
  Povm p;
  p.elements_ = std::move(elements);
  const double residual = p.completeness_residual();
  if (residual > tol.completeness) {
    double sum = 0.0;
    for (const auto& e : p.elements_) sum += e.alpha;
    std::ostringstream os;
    os.precision(12);
    os << "completeness violated: sum alpha = " << sum
       << ", residual " << residual;
    throw Error(ErrorCode::IncompletePovm, os.str());
  }
  return p;
}

Mat2c Povm::total() const {
  Mat2c sum = Mat2c::Zero();
  for (const auto& e : elements_) sum += e.matrix();
  return sum;
}

double Povm::completeness_residual() const {
  double alpha_sum = 0.0;
  Vec3 direction = Vec3::Zero();
  for (const auto& e : elements_) {
    alpha_sum += e.alpha;
    if (!e.full_operator) direction += e.alpha * e.n_hat;
  }
  return std::max(std::abs(alpha_sum - 2.0), direction.norm());
}

Eigen::VectorXd AlphaFamily::at(std::span<const double> t) const {
  Eigen::VectorXd a = base;
  const std::size_t k = std::min(t.size(), free_directions.size());
  for (std::size_t j = 0; j < k; ++j) a += t[j] * free_directions[j];
  return a;
}

Povm AlphaFamily::povm_at(std::span<const double> t) const {
  const Eigen::VectorXd a = at(t);
  std::vector<PovmElement> elements;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (a[static_cast<Eigen::Index>(i)] <= kDroppedAlpha) continue;
    elements.push_back({indices[i], a[static_cast<Eigen::Index>(i)], n_hats[i],
                        full[i]});
  }
  return Povm::unchecked(std::move(elements));
}

Povm AlphaFamily::base_povm() const { return povm_at({}); }

std::vector<Eigen::VectorXd> AlphaFamily::vertices() const {
  const std::size_t k = free_directions.size();
  std::vector<Eigen::VectorXd> out;
  out.reserve(std::size_t{1} << k);
  std::vector<double> t(k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    for (std::size_t j = 0; j < k; ++j) {
      t[j] = (mask >> j) & 1U ? box[j].hi : box[j].lo;
    }
    out.push_back(at(t));
  }
  return out;
}

Interval AlphaFamily::coordinate_range(std::size_t k) const {
  Interval r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
  for (const auto& v : vertices()) {
    const double x = v[static_cast<Eigen::Index>(k)];
    r.lo = std::min(r.lo, x);
    r.hi = std::max(r.hi, x);
  }
  return r;
}

}  // namespace qmed
