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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tolerances.hpp"

namespace qmed {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

/// One input entry: a prior and the Bloch vector of the state.
struct StateSpec {
  double prior = 0.0;
  Vec3 bloch = Vec3::Zero();
};

/// A prior together with the subnormalized Bloch vector p * v. Everything the
/// solver does is expressed on these points; the ensemble only adds the
/// physical constraints (priors sum to one, |v| <= 1).
struct WeightedPoint {
  double prior = 0.0;
  Vec3 v_tilde = Vec3::Zero();
};

struct EnsembleState {
  double prior = 0.0;
  Vec3 v = Vec3::Zero();
  Vec3 v_tilde = Vec3::Zero();
};

/// Validated discrimination problem. Immutable once built.
class Ensemble {
 public:
  /// Throws Error{NegativePrior, StateOutsideBall, PriorsNotNormalized}.
  static Ensemble make(std::span<const StateSpec> entries,
                       const Tolerances& tol = {});

  std::size_t size() const noexcept { return states_.size(); }
  const EnsembleState& operator[](std::size_t i) const { return states_[i]; }
  std::span<const EnsembleState> states() const noexcept { return states_; }

  std::vector<WeightedPoint> points() const;
  double max_prior() const noexcept;

 private:
  explicit Ensemble(std::vector<EnsembleState> states)
      : states_(std::move(states)) {}

  std::vector<EnsembleState> states_;
};

Ensemble make_ensemble(std::span<const StateSpec> entries,
                       const Tolerances& tol = {});

// Pauli matrices and the Bloch correspondence A = (a0 1 + a . sigma) / 2.

const std::array<Mat2c, 3>& pauli();

Mat2c operator_of(double scalar, const Vec3& vec);

struct BlochForm {
  double scalar = 0.0;  // Tr A
  Vec3 vec = Vec3::Zero();  // Tr(A sigma_k)
};

/// Real parts of the trace components; exact for Hermitian input.
BlochForm bloch_form(const Mat2c& a);

/// rho = (1 + v . sigma) / 2. Throws StateOutsideBall.
Mat2c density_matrix_of(const Vec3& v, const Tolerances& tol = {});

/// Eigenvalues of a Hermitian 2x2 matrix in ascending order (closed form).
std::array<double, 2> hermitian_eigenvalues(const Mat2c& h);

/// Largest singular value of a 2x2 matrix (closed form).
double operator_norm(const Mat2c& m);

struct LagrangeCandidate {
  double gamma0 = 0.0;
  Vec3 gamma = Vec3::Zero();
  /// States the candidate was constructed from (1 to 4 indices).
  std::vector<std::size_t> source;
};

/// pi = (alpha/2)(1 + n_hat . sigma), or (alpha/2) 1 when full_operator.
struct PovmElement {
  std::size_t state_index = 0;
  double alpha = 0.0;
  Vec3 n_hat = Vec3::UnitZ();
  bool full_operator = false;

  Mat2c matrix() const;
};

class Povm {
 public:
  Povm() = default;

  /// Checks |n_hat| = 1, 0 <= alpha <= 1 (2 for a full-operator element) and
  /// completeness. Throws Error{InvalidArgument, IncompletePovm}.
  static Povm make(std::vector<PovmElement> elements,
                   const Tolerances& tol = {});
  /// For elements produced internally whose invariants hold by construction.
  static Povm unchecked(std::vector<PovmElement> elements) {
    Povm p;
    p.elements_ = std::move(elements);
    return p;
  }

  std::span<const PovmElement> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Sum of the element matrices.
  Mat2c total() const;
  /// max(|sum alpha - 2|, |sum alpha n|), with full-operator elements
  /// contributing no direction.
  double completeness_residual() const;

 private:
  std::vector<PovmElement> elements_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// All alpha assignments for a fixed set of detection vectors:
/// alpha = base + sum_k t_k free_directions[k], t_k in box[k].
struct AlphaFamily {
  std::vector<std::size_t> indices;  // detected state per coordinate
  std::vector<Vec3> n_hats;
  std::vector<bool> full;
  Eigen::VectorXd base;
  std::vector<Eigen::VectorXd> free_directions;
  std::vector<Interval> box;
  /// True when box is the exact feasible range (zero or one free direction).
  bool box_exact = true;

  std::size_t free_dimension() const noexcept {
    return free_directions.size();
  }
  Eigen::VectorXd at(std::span<const double> t) const;
  /// Elements with alpha below 1e-14 are dropped.
  Povm povm_at(std::span<const double> t) const;
  Povm base_povm() const;
  /// Alpha vectors at the 2^k corners of the box.
  std::vector<Eigen::VectorXd> vertices() const;
  /// Range of coordinate k over the box vertices.
  Interval coordinate_range(std::size_t k) const;
};

struct Solution {
  LagrangeCandidate candidate;
  std::vector<std::size_t> detected;
  AlphaFamily povm_family;
  double p_guess = 0.0;
  bool no_measurement = false;

  Povm povm() const { return povm_family.base_povm(); }
};

/// Two disjoint element subsets, each rescaled to a stand-alone POVM.
/// subsets hold positions into the decomposed Povm's element list.
struct Decomposition {
  std::array<std::vector<std::size_t>, 2> subsets;
  double weight_w = 0.0;
  std::array<Povm, 2> rescaled;
};

}  // namespace qmed
