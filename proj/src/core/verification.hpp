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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "model.hpp"

namespace qmed {

// ---------------------------------------------------------------------------
// Optimality certificate on explicit 2x2 matrices.

struct CertificateReport {
  /// Bloch form of Gamma = sum_i rho~_i pi_i (Hermitian part).
  double gamma0 = 0.0;
  Vec3 gamma = Vec3::Zero();
  double hermiticity_residual = 0.0;
  /// Smallest eigenvalue of Gamma - rho~_i, per state.
  std::vector<double> psd_margins;
  /// ||(Gamma - rho~_i) pi_i||, per state.
  std::vector<double> stationarity_residuals;
  double completeness_residual = 0.0;
  bool optimal = false;

  double worst_psd_margin() const;
  double worst_stationarity() const;
};

CertificateReport certify(std::span<const WeightedPoint> points,
                          const Povm& povm, const Tolerances& tol = {});
CertificateReport certify(const Ensemble& ensemble, const Povm& povm,
                          const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Dual oracle: min over gamma of max_i (p_i + |v~_i - gamma|).

struct OracleOptions {
  double grid_step = 0.02;
  double tolerance = 1e-9;
};

struct OracleResult {
  double gamma0_star = 0.0;
  Vec3 gamma_star = Vec3::Zero();
};

/// Coarse grid over the bounding box of the v~_i followed by restarted
/// Nelder-Mead refinement. gamma0_star is always an upper bound on P_guess.
OracleResult dual_oracle(std::span<const WeightedPoint> points,
                         const OracleOptions& options = {});
OracleResult dual_oracle(const Ensemble& ensemble,
                         const OracleOptions& options = {});

/// The dual objective itself, exposed for tests.
double dual_objective(std::span<const WeightedPoint> points, const Vec3& gamma);

// ---------------------------------------------------------------------------
// Monte Carlo sampling of measurement outcomes.

struct SampleReport {
  std::uint64_t shots = 0;  // per state
  std::uint64_t seed = 0;
  /// confusion[i][j]: state i prepared, outcome j observed.
  std::vector<std::vector<std::uint64_t>> confusion;
  double empirical_success = 0.0;
  double theoretical_success = 0.0;
  double z_score = 0.0;
};

/// P(j|i) = Tr(pi_j rho_i) for every state i and outcome j (outcomes are
/// labelled by state index). Throws ProbabilityOutOfRange.
std::vector<std::vector<double>> outcome_probabilities(const Ensemble& ensemble,
                                                       const Povm& povm);

/// Draws shots_per_state outcomes for each state from a 64-bit Mersenne
/// twister seeded with seed. Results are bit-reproducible across platforms.
SampleReport sample_outcomes(const Ensemble& ensemble, const Povm& povm,
                             std::uint64_t shots_per_state, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Closed-form reference scenarios.

/// Trine states in the x-z plane: v1 = +z, v2/v3 at +-120 degrees.
std::array<Vec3, 3> trine_bloch_vectors();

/// Priors (p + delta, p - delta, 1 - 2p). Throws OutOfParameterRegion.
Ensemble trine_ensemble(double p, double delta);

enum class TrineRegime { TwoElement, ThreeElement };

const char* to_string(TrineRegime regime) noexcept;

struct TrineReference {
  double p_guess = 0.0;
  TrineRegime regime = TrineRegime::TwoElement;
  Vec3 gamma = Vec3::Zero();
};

/// Largest delta for which the two-element measurement is optimal; nullopt
/// when no delta >= 0 qualifies at this p.
std::optional<double> trine_boundary(double p);

/// Valid for 1/3 <= p <= 1/2, 0 <= delta <= min(3p - 1, p); throws
/// OutOfParameterRegion otherwise.
TrineReference trine_reference(double p, double delta);

/// max(p_max, (1 + |v~_1 - v~_2|) / 2). Throws WrongArity unless N = 2.
double helstrom_two_state(const Ensemble& ensemble);

/// +z, (sin t, 0, cos t), -z, (-sin t, 0, cos t), equal priors.
std::array<Vec3, 4> four_symmetric_bloch_vectors(double theta);
Ensemble four_symmetric_ensemble(double theta);

struct FourSymmetricReference {
  /// Range of alpha_4 over the optimal family.
  Interval alpha4;
  /// alpha_4 = 0 and alpha_4 = 1/(1 + cos t).
  std::array<double, 4> lower_extreme{};
  std::array<double, 4> upper_extreme{};
  /// At t = pi/2: Z basis {pi_1, pi_3} and X basis {pi_2, pi_4}.
  std::optional<std::array<Povm, 2>> pi_half_split;
  /// t = 0 makes states 2 and 4 coincide with state 1.
  bool degenerate = false;
};

/// Throws AngleOutOfRange outside [0, pi/2].
FourSymmetricReference four_symmetric_reference(double theta);

/// Three states reduced to the x-z plane with v1 on +z.
struct ThreeStateCanonical {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double theta = 0.0;
  double phi = 0.0;
  std::array<double, 3> priors{};

  std::array<Vec3, 3> subnormalized() const;
  Ensemble ensemble() const;
};

}  // namespace qmed
