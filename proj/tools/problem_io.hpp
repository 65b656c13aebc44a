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

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmed/qmed.h"

namespace qmed_cli {

/// Exit codes of the command-line tool.
enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kSolverExhausted = 2,
  kCertificateFailed = 3,
  kStatisticalReject = 4,
};

/// Input problem that could not be read; the message names the offending
/// field (for example "states[2].prior").
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T, void (*Destroy)(T*)>
struct HandleDeleter {
  void operator()(T* p) const noexcept { Destroy(p); }
};

using EnsemblePtr =
    std::unique_ptr<qmed_ensemble, HandleDeleter<qmed_ensemble, qmed_ensemble_destroy>>;
using SolutionPtr =
    std::unique_ptr<qmed_solution, HandleDeleter<qmed_solution, qmed_solution_destroy>>;
using PovmPtr = std::unique_ptr<qmed_povm, HandleDeleter<qmed_povm, qmed_povm_destroy>>;
using CertificatePtr =
    std::unique_ptr<qmed_certificate, HandleDeleter<qmed_certificate, qmed_certificate_destroy>>;
using SamplePtr = std::unique_ptr<qmed_sample_report,
                                  HandleDeleter<qmed_sample_report, qmed_sample_report_destroy>>;

struct Problem {
  std::vector<double> priors;
  std::vector<double> bloch;  // xyz per state
  std::vector<std::string> labels;
  qmed_tolerances tolerances = qmed_tolerances_default();
  EnsemblePtr ensemble;
};

nlohmann::json read_json(const std::string& path);

/// Parses and validates a problem file. tolerance_override replaces the
/// equality tolerance after the file's own overrides are applied.
Problem load_problem(const std::string& path,
                     std::optional<double> tolerance_override = std::nullopt);

/// Reads {"elements": [{"state", "alpha", "n_hat", "full"?}, ...]}. Throws
/// InputError naming the element or the completeness violation.
PovmPtr load_povm(const std::string& path, const qmed_tolerances& tol);

/// Rounds to 9 significant digits for report output.
double round9(double x);

nlohmann::json vec3(const double v[3], bool rounded);

/// Writes text to path, or stdout when path is empty. Throws InputError when
/// the file cannot be written.
void emit(const std::string& text, const std::string& path);

}  // namespace qmed_cli
