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

namespace qmed {

/// Every numerical threshold used by the solver, the certificate checker and
/// the CLI. One instance is threaded through all entry points so that a
/// solve and the certificate of its result agree on what "equal" means.
struct Tolerances {
  /// |gamma0 - p_i - |v~_i - gamma|| below this counts as saturated; margins
  /// above -equality count as satisfied.
  double equality = 1e-9;
  /// Smallest admissible eigenvalue of Gamma - rho~_i.
  double psd_margin = -1e-10;
  /// Max entry of sum(pi) - 1, and |sum alpha - 2|, |sum alpha n|.
  double completeness = 1e-10;
  /// Operator norm of (Gamma - rho~_i) pi_i.
  double stationarity = 1e-9;
  double hermiticity = 1e-10;
  /// |sum p - 1|.
  double prior_sum = 1e-12;
  /// Allowed excess of a Bloch vector norm over 1, and of |n_hat| over 1.
  double ball = 1e-12;
  /// Two points closer than this are the same point.
  double coincidence = 1e-12;
};

}  // namespace qmed
