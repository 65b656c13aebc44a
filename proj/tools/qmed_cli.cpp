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

// qmed_cli: minimum-error discrimination of qubit ensembles from the shell.
//
//   qmed_cli solve problem.json [--tolerance t] [--out report.json]
//   qmed_cli certify problem.json povm.json
//   qmed_cli oracle problem.json [--compare]
//   qmed_cli sample problem.json povm.json --shots n --seed s
//   qmed_cli sweep-trine [--p-steps 50] [--delta-steps 50] [--out grid.csv]
//
// Exit codes: 0 success, 1 input error, 2 solver exhausted, 3 certificate
// failure, 4 statistical rejection.

#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "problem_io.hpp"
#include "qmed/qmed.h"

namespace qmed_cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Options {
  std::string problem;
  std::string povm;
  std::string out;
  std::optional<double> tolerance;
  bool compare = false;
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 1;
  int p_steps = 50;
  int delta_steps = 50;
};

std::string describe_failure(qmed_status st) {
  std::ostringstream os;
  os << qmed_status_string(st) << ": " << qmed_last_error();
  return os.str();
}

ordered_json certificate_json(const qmed_certificate* cert, bool rounded) {
  const auto num = [rounded](double x) { return rounded ? round9(x) : x; };
  ordered_json j;
  double g0 = 0.0;
  double g[3];
  qmed_certificate_gamma(cert, &g0, g);
  j["optimal"] = qmed_certificate_optimal(cert) != 0;
  j["gamma0"] = num(g0);
  j["gamma"] = vec3(g, rounded);
  j["hermiticity_residual"] = num(qmed_certificate_hermiticity(cert));
  j["completeness_residual"] = num(qmed_certificate_completeness(cert));
  ordered_json margins = ordered_json::array();
  ordered_json stationarity = ordered_json::array();
  double worst = INFINITY;
  std::size_t worst_state = 0;
  for (std::size_t i = 0; i < qmed_certificate_size(cert); ++i) {
    const double m = qmed_certificate_psd_margin(cert, i);
    margins.push_back(num(m));
    stationarity.push_back(num(qmed_certificate_stationarity(cert, i)));
    if (m < worst) {
      worst = m;
      worst_state = i;
    }
  }
  j["psd_margins"] = margins;
  j["stationarity_residuals"] = stationarity;
  j["worst_psd_margin"] = {{"state", worst_state}, {"margin", num(worst)}};
  return j;
}

ordered_json element_json(const qmed_povm_element& e, const Problem& prob) {
  ordered_json j;
  j["state"] = e.state_index;
  if (e.state_index < prob.labels.size() && !prob.labels[e.state_index].empty()) {
    j["label"] = prob.labels[e.state_index];
  }
  j["alpha"] = e.alpha;
  j["n_hat"] = vec3(e.n_hat, false);
  j["full"] = e.full_operator != 0;
  return j;
}

int cmd_solve(const Options& opt) {
  const Problem prob = load_problem(opt.problem, opt.tolerance);

  qmed_solution* raw = nullptr;
  const qmed_status st = qmed_solve(prob.ensemble.get(), &prob.tolerances, &raw);
  if (st == QMED_ERR_SOLVER_EXHAUSTED) {
    double g0 = 0.0;
    double g[3];
    std::cerr << "solve: " << describe_failure(st) << "\n";
    if (qmed_dual_oracle(prob.ensemble.get(), 0.0, 0.0, &g0, g) == QMED_OK) {
      std::cerr << "solve: dual oracle gamma0_star = " << round9(g0) << "\n";
    }
    return kSolverExhausted;
  }
  if (st != QMED_OK) throw InputError(describe_failure(st));
  const SolutionPtr sol(raw);

  qmed_povm* povm_raw = nullptr;
  if (qmed_solution_povm(sol.get(), &povm_raw) != QMED_OK) {
    throw std::runtime_error(qmed_last_error());
  }
  const PovmPtr povm(povm_raw);
  qmed_certificate* cert_raw = nullptr;
  if (qmed_certify(prob.ensemble.get(), povm.get(), &prob.tolerances, &cert_raw) != QMED_OK) {
    throw std::runtime_error(qmed_last_error());
  }
  const CertificatePtr cert(cert_raw);

  double g0 = 0.0;
  double g[3];
  qmed_solution_gamma(sol.get(), &g0, g);

  ordered_json report;
  report["p_guess"] = round9(qmed_solution_p_guess(sol.get()));
  report["gamma0"] = round9(g0);
  report["gamma"] = vec3(g, true);
  report["no_measurement"] = qmed_solution_no_measurement(sol.get()) != 0;
  ordered_json detected = ordered_json::array();
  for (std::size_t k = 0; k < qmed_solution_detected_count(sol.get()); ++k) {
    detected.push_back(qmed_solution_detected_at(sol.get(), k));
  }
  report["detected"] = detected;

  ordered_json elements = ordered_json::array();
  for (std::size_t k = 0; k < qmed_povm_size(povm.get()); ++k) {
    qmed_povm_element e{};
    qmed_povm_element_at(povm.get(), k, &e);
    elements.push_back(element_json(e, prob));
  }
  report["elements"] = elements;

  ordered_json family;
  const std::size_t dims = qmed_solution_free_dimension(sol.get());
  family["free_dimension"] = dims;
  family["box_exact"] = qmed_solution_box_exact(sol.get()) != 0;
  ordered_json directions = ordered_json::array();
  std::vector<double> dir(qmed_solution_detected_count(sol.get()));
  for (std::size_t k = 0; k < dims; ++k) {
    double lo = 0.0;
    double hi = 0.0;
    qmed_solution_free_direction(sol.get(), k, dir.data(), &lo, &hi);
    ordered_json d;
    ordered_json coords = ordered_json::array();
    for (double x : dir) coords.push_back(round9(x));
    d["direction"] = coords;
    d["lo"] = round9(lo);
    d["hi"] = round9(hi);
    directions.push_back(d);
  }
  family["directions"] = directions;
  report["alpha_family"] = family;
  report["certificate"] = certificate_json(cert.get(), true);

  emit(report.dump(2) + "\n", opt.out);
  return qmed_certificate_optimal(cert.get()) ? kOk : kCertificateFailed;
}

int cmd_certify(const Options& opt) {
  const Problem prob = load_problem(opt.problem, opt.tolerance);
  const PovmPtr povm = load_povm(opt.povm, prob.tolerances);

  qmed_certificate* raw = nullptr;
  const qmed_status st = qmed_certify(prob.ensemble.get(), povm.get(), &prob.tolerances, &raw);
  if (st != QMED_OK) {
    std::ostringstream os;
    const long long idx = qmed_last_error_index();
    if (idx >= 0) os << "elements[" << idx << "]: ";
    os << describe_failure(st);
    throw InputError(os.str());
  }
  const CertificatePtr cert(raw);
  const ordered_json report = certificate_json(cert.get(), false);
  emit(report.dump(2, ' ', false, json::error_handler_t::strict) + "\n", opt.out);
  if (!qmed_certificate_optimal(cert.get())) {
    const auto& worst = report["worst_psd_margin"];
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", worst["margin"].get<double>());
    std::cerr << "certify: not optimal; most negative margin " << buf << " at state "
              << worst["state"].get<std::size_t>() << "\n";
    return kCertificateFailed;
  }
  return kOk;
}

int cmd_oracle(const Options& opt) {
  const Problem prob = load_problem(opt.problem, opt.tolerance);
  double g0 = 0.0;
  double g[3];
  const qmed_status st = qmed_dual_oracle(prob.ensemble.get(), 0.0, 0.0, &g0, g);
  if (st != QMED_OK) throw InputError(describe_failure(st));

  ordered_json report;
  report["gamma0_star"] = round9(g0);
  report["gamma_star"] = vec3(g, true);

  const std::size_t n = prob.priors.size();
  bool equal = n >= 2;
  for (double p : prob.priors) equal = equal && std::abs(p - prob.priors[0]) <= 1e-12;
  if (equal) {
    double center[3];
    double radius = 0.0;
    if (qmed_circumsphere(n, prob.bloch.data(), center, &radius) == QMED_OK) {
      report["circumsphere_radius"] = round9(radius);
      report["equal_priors_p_guess"] = round9((1.0 + radius) / static_cast<double>(n));
    }
  }

  int code = kOk;
  if (opt.compare) {
    qmed_solution* raw = nullptr;
    const qmed_status sst = qmed_solve(prob.ensemble.get(), &prob.tolerances, &raw);
    if (sst == QMED_OK) {
      const SolutionPtr sol(raw);
      const double p = qmed_solution_p_guess(sol.get());
      report["p_guess_solver"] = round9(p);
      report["gap"] = round9(g0 - p);
    } else if (sst == QMED_ERR_SOLVER_EXHAUSTED) {
      report["p_guess_solver"] = nullptr;
      std::cerr << "oracle: " << describe_failure(sst) << "\n";
      code = kSolverExhausted;
    } else {
      throw InputError(describe_failure(sst));
    }
  }
  emit(report.dump(2) + "\n", opt.out);
  return code;
}

int cmd_sample(const Options& opt) {
  if (opt.shots < 1) throw InputError("--shots: must be at least 1");
  const Problem prob = load_problem(opt.problem, opt.tolerance);
  const PovmPtr povm = load_povm(opt.povm, prob.tolerances);

  qmed_sample_report* raw = nullptr;
  const qmed_status st = qmed_sample(prob.ensemble.get(), povm.get(), opt.shots, opt.seed, &raw);
  if (st != QMED_OK) throw InputError(describe_failure(st));
  const SamplePtr rep(raw);

  ordered_json report;
  report["shots_per_state"] = opt.shots;
  report["seed"] = opt.seed;
  ordered_json confusion = ordered_json::array();
  for (std::size_t i = 0; i < qmed_sample_report_states(rep.get()); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < qmed_sample_report_outcomes(rep.get()); ++j) {
      row.push_back(qmed_sample_report_count(rep.get(), i, j));
    }
    confusion.push_back(row);
  }
  report["confusion"] = confusion;
  report["empirical_success"] = round9(qmed_sample_report_empirical(rep.get()));
  report["theoretical_success"] = round9(qmed_sample_report_theoretical(rep.get()));
  const double z = qmed_sample_report_z_score(rep.get());
  if (std::isfinite(z)) {
    report["z_score"] = round9(z);
  } else {
    report["z_score"] = z > 0 ? "inf" : "-inf";
  }
  emit(report.dump(2) + "\n", opt.out);
  return std::abs(z) <= 4.0 ? kOk : kStatisticalReject;
}

struct SweepRow {
  double p = 0.0;
  double delta = 0.0;
  std::string regime;
  double solver = 0.0;
  double reference = 0.0;
};

std::vector<SweepRow> sweep_column(double p, int delta_steps) {
  std::vector<SweepRow> rows;
  for (int j = 0; j < delta_steps; ++j) {
    SweepRow row;
    row.p = p;
    row.delta = j == delta_steps - 1
                    ? 3.0 * p - 1.0
                    : (3.0 * p - 1.0) * static_cast<double>(j) / (delta_steps - 1);
    row.delta = std::max(row.delta, 0.0);

    qmed_ensemble* ens_raw = nullptr;
    qmed_status st = qmed_trine_ensemble(p, row.delta, &ens_raw);
    if (st != QMED_OK) throw std::runtime_error(describe_failure(st));
    const EnsemblePtr ens(ens_raw);
    qmed_solution* sol_raw = nullptr;
    st = qmed_solve(ens.get(), nullptr, &sol_raw);
    if (st != QMED_OK) throw std::runtime_error(describe_failure(st));
    const SolutionPtr sol(sol_raw);
    row.solver = qmed_solution_p_guess(sol.get());
    const std::size_t detected = qmed_solution_detected_count(sol.get());
    row.regime = qmed_solution_no_measurement(sol.get()) ? "no_measurement"
                 : detected >= 3                          ? "three_element"
                                                          : "two_element";
    int regime = 0;
    st = qmed_trine_reference(p, row.delta, &row.reference, &regime, nullptr);
    if (st != QMED_OK) throw std::runtime_error(describe_failure(st));
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_sweep_trine(const Options& opt) {
  if (opt.p_steps < 2 || opt.delta_steps < 2) {
    throw InputError("--p-steps and --delta-steps must be at least 2");
  }
  std::vector<std::future<std::vector<SweepRow>>> columns;
  for (int k = 0; k < opt.p_steps; ++k) {
    const double p = k == opt.p_steps - 1
                         ? 0.5
                         : 1.0 / 3.0 + static_cast<double>(k) / (opt.p_steps - 1) / 6.0;
    columns.push_back(std::async(std::launch::async, sweep_column, p, opt.delta_steps));
  }

  std::string csv = "p,delta,regime,p_guess_solver,p_guess_reference,abs_diff\n";
  double max_diff = 0.0;
  char buf[256];
  for (auto& column : columns) {
    for (const auto& r : column.get()) {
      const double diff = std::abs(r.solver - r.reference);
      max_diff = std::max(max_diff, diff);
      std::snprintf(buf, sizeof buf, "%.9g,%.9g,%s,%.12g,%.12g,%.3e\n", r.p, r.delta,
                    r.regime.c_str(), r.solver, r.reference, diff);
      csv += buf;
    }
  }
  std::snprintf(buf, sizeof buf, "max_abs_diff,%.3e\n", max_diff);
  csv += buf;
  emit(csv, opt.out);
  return kOk;
}

}  // namespace
}  // namespace qmed_cli

int main(int argc, char** argv) {
  using namespace qmed_cli;
  Options opt;
  CLI::App app{"Minimum-error discrimination of qubit ensembles"};
  app.require_subcommand(1);

  double tolerance = 0.0;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", tolerance, "Equality tolerance for saturated constraints")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "Write the report to this file instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "Optimal measurement and guessing probability");
  solve->add_option("problem", opt.problem, "Problem file")->required();
  add_common(solve);

  auto* certify = app.add_subcommand("certify", "Check a measurement for optimality");
  certify->add_option("problem", opt.problem, "Problem file")->required();
  certify->add_option("povm", opt.povm, "Measurement file")->required();
  add_common(certify);

  auto* oracle = app.add_subcommand("oracle", "Solve the dual problem numerically");
  oracle->add_option("problem", opt.problem, "Problem file")->required();
  oracle->add_flag("--compare", opt.compare, "Also run the solver and report the gap");
  add_common(oracle);

  auto* sample = app.add_subcommand("sample", "Monte Carlo run of a measurement");
  sample->add_option("problem", opt.problem, "Problem file")->required();
  sample->add_option("povm", opt.povm, "Measurement file")->required();
  sample->add_option("--shots", opt.shots, "Shots per state")->capture_default_str();
  sample->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  add_common(sample);

  auto* sweep = app.add_subcommand("sweep-trine", "Trine (p, delta) grid versus closed forms");
  sweep->add_option("--p-steps", opt.p_steps, "Grid points in p")->capture_default_str();
  sweep->add_option("--delta-steps", opt.delta_steps, "Grid points in delta")
      ->capture_default_str();
  sweep->add_option("--out", opt.out, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (tolerance > 0.0) opt.tolerance = tolerance;

  try {
    if (*solve) return cmd_solve(opt);
    if (*certify) return cmd_certify(opt);
    if (*oracle) return cmd_oracle(opt);
    if (*sample) return cmd_sample(opt);
    if (*sweep) return cmd_sweep_trine(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
