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

#include "problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qmed_cli {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + "." + key + ": missing");
  if (!it->is_number()) throw InputError(where + "." + key + ": expected a number");
  return it->get<double>();
}

void vector_field(const json& obj, const char* key, const std::string& where,
                  std::vector<double>& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + "." + key + ": missing");
  if (!it->is_array() || it->size() != 3) {
    throw InputError(where + "." + key + ": expected an array of three numbers");
  }
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(*it)[k].is_number()) {
      throw InputError(where + "." + key + "[" + std::to_string(k) + "]: expected a number");
    }
    out.push_back((*it)[k].get<double>());
  }
}

void apply_tolerances(const json& obj, qmed_tolerances& tol) {
  if (!obj.is_object()) throw InputError("tolerances: expected an object");
  const std::pair<const char*, double*> fields[] = {
      {"equality", &tol.equality},       {"psd_margin", &tol.psd_margin},
      {"completeness", &tol.completeness}, {"stationarity", &tol.stationarity},
      {"hermiticity", &tol.hermiticity}, {"prior_sum", &tol.prior_sum},
      {"ball", &tol.ball},               {"coincidence", &tol.coincidence},
  };
  for (const auto& [key, target] : fields) {
    if (obj.contains(key)) *target = number_field(obj, key, "tolerances");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const auto& f : fields) known = known || item.key() == f.first;
    if (!known) throw InputError("tolerances." + item.key() + ": unknown field");
  }
}

}  // namespace

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Problem load_problem(const std::string& path, std::optional<double> tolerance_override) {
  const json doc = read_json(path);
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object");
  const auto states = doc.find("states");
  if (states == doc.end()) throw InputError("states: missing");
  if (!states->is_array() || states->empty()) {
    throw InputError("states: expected a non-empty array");
  }

  Problem prob;
  for (std::size_t i = 0; i < states->size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const json& s = (*states)[i];
    if (!s.is_object()) throw InputError(where + ": expected an object");
    prob.priors.push_back(number_field(s, "prior", where));
    vector_field(s, "bloch", where, prob.bloch);
    if (const auto label = s.find("label"); label != s.end()) {
      if (!label->is_string()) throw InputError(where + ".label: expected a string");
      prob.labels.push_back(label->get<std::string>());
    } else {
      prob.labels.push_back("");
    }
  }
  if (const auto tol = doc.find("tolerances"); tol != doc.end()) {
    apply_tolerances(*tol, prob.tolerances);
  }
  if (tolerance_override) prob.tolerances.equality = *tolerance_override;

  qmed_ensemble* raw = nullptr;
  const qmed_status st = qmed_ensemble_create(prob.priors.size(), prob.priors.data(),
                                              prob.bloch.data(), &prob.tolerances, &raw);
  if (st != QMED_OK) {
    std::ostringstream os;
    const long long idx = qmed_last_error_index();
    if (idx >= 0) os << "states[" << idx << "]: ";
    os << qmed_status_string(st) << ": " << qmed_last_error();
    throw InputError(os.str());
  }
  prob.ensemble.reset(raw);
  return prob;
}

PovmPtr load_povm(const std::string& path, const qmed_tolerances& tol) {
  const json doc = read_json(path);
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object");
  const auto elements = doc.find("elements");
  if (elements == doc.end()) throw InputError("elements: missing");
  if (!elements->is_array() || elements->empty()) {
    throw InputError("elements: expected a non-empty array");
  }
  std::vector<qmed_povm_element> els;
  for (std::size_t k = 0; k < elements->size(); ++k) {
    const std::string where = "elements[" + std::to_string(k) + "]";
    const json& e = (*elements)[k];
    if (!e.is_object()) throw InputError(where + ": expected an object");
    qmed_povm_element el{};
    const auto state = e.find("state");
    if (state == e.end()) throw InputError(where + ".state: missing");
    if (!state->is_number_unsigned()) {
      throw InputError(where + ".state: expected a non-negative integer");
    }
    el.state_index = state->get<std::size_t>();
    el.alpha = number_field(e, "alpha", where);
    if (const auto full = e.find("full"); full != e.end()) {
      if (!full->is_boolean()) throw InputError(where + ".full: expected a boolean");
      el.full_operator = full->get<bool>() ? 1 : 0;
    }
    std::vector<double> n;
    if (el.full_operator && !e.contains("n_hat")) {
      n = {0.0, 0.0, 1.0};
    } else {
      vector_field(e, "n_hat", where, n);
    }
    for (int c = 0; c < 3; ++c) el.n_hat[c] = n[static_cast<std::size_t>(c)];
    els.push_back(el);
  }

  qmed_povm* raw = nullptr;
  const qmed_status st = qmed_povm_create(els.size(), els.data(), &tol, &raw);
  if (st != QMED_OK) {
    std::ostringstream os;
    const long long idx = qmed_last_error_index();
    if (idx >= 0) os << "elements[" << idx << "]: ";
    os << qmed_status_string(st) << ": " << qmed_last_error();
    throw InputError(os.str());
  }
  return PovmPtr(raw);
}

double round9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

json vec3(const double v[3], bool rounded) {
  if (rounded) return json::array({round9(v[0]), round9(v[1]), round9(v[2])});
  return json::array({v[0], v[1], v[2]});
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

}  // namespace qmed_cli
