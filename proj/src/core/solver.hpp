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

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "verification.hpp"

namespace qmed {

/// Outcome of checking gamma0 - p_i >= |v~_i - gamma| for every state.
struct CandidateReport {
  LagrangeCandidate candidate;
  bool valid = false;
  /// Per-state margin gamma0 - p_i - |v~_i - gamma|.
  std::vector<double> margins;
  /// (state, margin) for every margin below -tol.equality.
  std::vector<std::pair<std::size_t, double>> violations;
};

/// Detected state and its measurement direction (v~_i - gamma)/|v~_i - gamma|.
struct Detection {
  std::size_t index = 0;
  Vec3 n_hat = Vec3::UnitZ();
};

/// Raised when no candidate survives validation. Carries the dual oracle's
/// answer and the candidate with the least negative worst margin.
class SolverExhausted : public Error {
 public:
  SolverExhausted(const std::string& what, OracleResult oracle,
                  std::optional<CandidateReport> best)
      : Error(ErrorCode::SolverExhausted, what),
        oracle_(oracle),
        best_(std::move(best)) {}

  const OracleResult& oracle() const noexcept { return oracle_; }
  const std::optional<CandidateReport>& best_candidate() const noexcept {
    return best_;
  }

 private:
  OracleResult oracle_;
  std::optional<CandidateReport> best_;
};

/// Guess the state with strictly greatest prior without measuring, when that
/// is optimal (p_j - p_i >= |v~_j - v~_i| for all i).
std::optional<Solution> check_no_measurement(std::span<const WeightedPoint> points,
                                             const Tolerances& tol = {});
std::optional<Solution> check_no_measurement(const Ensemble& ensemble,
                                             const Tolerances& tol = {});

/// Vertex of the l-branch of the (l, m) hyperbola. nullopt when the pair is
/// not constructible.
std::optional<LagrangeCandidate> pair_candidate(std::span<const WeightedPoint> points,
                                                std::size_t l, std::size_t m);
std::optional<LagrangeCandidate> pair_candidate(const Ensemble& ensemble,
                                                std::size_t l, std::size_t m);

CandidateReport validate_candidate(std::span<const WeightedPoint> points,
                                   const LagrangeCandidate& candidate,
                                   const Tolerances& tol = {});
CandidateReport validate_candidate(const Ensemble& ensemble,
                                   const LagrangeCandidate& candidate,
                                   const Tolerances& tol = {});

/// Common point of the three pairwise hyperbolas inside the triangle of the
/// three v~'s, found by multistart damped Newton in the plane of the points.
std::optional<LagrangeCandidate> triple_candidate(std::span<const WeightedPoint> points,
                                                  std::size_t l, std::size_t m,
                                                  std::size_t n,
                                                  const Tolerances& tol = {});
std::optional<LagrangeCandidate> triple_candidate(const Ensemble& ensemble,
                                                  std::size_t l, std::size_t m,
                                                  std::size_t n,
                                                  const Tolerances& tol = {});

/// Common point of the hyperbolas of four states inside their tetrahedron.
std::optional<LagrangeCandidate> quad_candidate(std::span<const WeightedPoint> points,
                                                std::size_t l, std::size_t m,
                                                std::size_t n, std::size_t o,
                                                const Tolerances& tol = {});
std::optional<LagrangeCandidate> quad_candidate(const Ensemble& ensemble,
                                                std::size_t l, std::size_t m,
                                                std::size_t n, std::size_t o,
                                                const Tolerances& tol = {});

/// Equal priors: circumsphere (O, R) of the Bloch vectors gives
/// gamma = O/N, gamma0 = (1 + R)/N, detected = support. Throws
/// InvalidArgument for unequal priors, DegenerateAllCoincident.
Solution equal_priors_solve(const Ensemble& ensemble, const Tolerances& tol = {});

/// Scans every eligible state for saturation and returns its direction.
/// Throws GammaCoincidesWithState.
std::vector<Detection> detection_vectors(std::span<const WeightedPoint> points,
                                         const LagrangeCandidate& candidate,
                                         const Tolerances& tol = {});

/// Solves sum alpha = 2, sum alpha n = 0, 0 <= alpha <= 1. Base is the
/// minimum-norm feasible solution. Throws InfeasibleAlphaSystem.
AlphaFamily solve_alphas(std::span<const Detection> detections,
                         const Tolerances& tol = {});

/// Full instruction: equal priors, no measurement, pairs (by gamma0'
/// descending), triples, quadruples. The returned POVM passes certify().
/// Throws SolverExhausted.
Solution solve(const Ensemble& ensemble, const Tolerances& tol = {});

/// Same as solve() on raw (prior, v~) points. Priors need not sum to one and
/// the points need not come from states inside the Bloch ball, which makes
/// rigid transformations of a problem solvable directly.
Solution solve_points(std::span<const WeightedPoint> points,
                      const Tolerances& tol = {});

/// Every constructible pair/triple/quad candidate with its validation.
std::vector<CandidateReport> enumerate_candidates(std::span<const WeightedPoint> points,
                                                  const Tolerances& tol = {});

/// Indices that may be detected: positive prior and not a duplicate
/// (same prior, same v~) of an earlier state.
std::vector<std::size_t> eligible_states(std::span<const WeightedPoint> points,
                                         const Tolerances& tol = {});

/// All splits of the POVM into two parts whose directions each sum to zero.
/// Empty for fewer than four elements.
std::vector<Decomposition> decompose_povm(const Povm& povm,
                                          const Tolerances& tol = {});

}  // namespace qmed
