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

#include "solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "geometry.hpp"

namespace qmed {

namespace {

constexpr int kNewtonMaxIter = 200;
constexpr double kNewtonResidual = 1e-12;
constexpr double kHullSlack = 1e-9;
constexpr std::size_t kMaxSupportSearch = 16;

using Points = std::span<const WeightedPoint>;

void check_index(std::size_t n, std::size_t i) {
  if (i >= n) {
    std::ostringstream os;
    os << "state index " << i << " out of range (size " << n << ")";
    throw Error(ErrorCode::IndexOutOfRange, os.str(), i);
  }
}

// Damped Newton on |a_k - g| - |a_0 - g| = p_0 - p_k, k = 1..D.
template <int D>
std::optional<Eigen::Matrix<double, D, 1>> equalize(
    const std::array<Eigen::Matrix<double, D, 1>, D + 1>& foci,
    const std::array<double, D + 1>& priors, Eigen::Matrix<double, D, 1> g) {
  using Vec = Eigen::Matrix<double, D, 1>;
  using Mat = Eigen::Matrix<double, D, D>;

  const auto residual = [&](const Vec& x, Vec& f, Mat* jac) -> bool {
    std::array<Vec, D + 1> unit;
    std::array<double, D + 1> dist;
    for (int k = 0; k <= D; ++k) {
      const Vec diff = foci[k] - x;
      dist[k] = diff.norm();
      if (dist[k] < 1e-14) return false;
      unit[k] = diff / dist[k];
    }
    for (int k = 1; k <= D; ++k) {
      f[k - 1] = dist[k] - dist[0] - (priors[0] - priors[k]);
      if (jac) jac->row(k - 1) = (unit[0] - unit[k]).transpose();
    }
    return true;
  };

  Vec f;
  Mat jac;
  if (!residual(g, f, &jac)) return std::nullopt;
  for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
    if (f.cwiseAbs().maxCoeff() <= kNewtonResidual) return g;
    const auto lu = jac.fullPivLu();
    if (!lu.isInvertible() || std::abs(jac.determinant()) < 1e-14) {
      return std::nullopt;
    }
    const Vec step = lu.solve(-f);
    if (!step.allFinite()) return std::nullopt;

    double lambda = 1.0;
    Vec g_next, f_next;
    bool accepted = false;
    while (lambda > 1e-10) {
      g_next = g + lambda * step;
      if (residual(g_next, f_next, nullptr) && f_next.norm() < f.norm()) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) return std::nullopt;
    g = g_next;
    if (!residual(g, f, &jac)) return std::nullopt;
  }
  if (f.cwiseAbs().maxCoeff() <= kNewtonResidual) return g;
  return std::nullopt;
}

// Barycentric coordinates of g in the simplex spanned by verts; nullopt when
// the simplex is degenerate.
template <int D>
std::optional<Eigen::Matrix<double, D + 1, 1>> barycentric(
    const std::array<Eigen::Matrix<double, D, 1>, D + 1>& verts,
    const Eigen::Matrix<double, D, 1>& g) {
  Eigen::Matrix<double, D, D> edges;
  double scale = 0.0;
  for (int k = 0; k < D; ++k) {
    edges.col(k) = verts[k + 1] - verts[0];
    scale = std::max(scale, edges.col(k).norm());
  }
  if (scale == 0.0 || std::abs(edges.determinant()) <= 1e-12 * std::pow(scale, D)) {
    return std::nullopt;
  }
  const Eigen::Matrix<double, D, 1> lambda = edges.fullPivLu().solve(g - verts[0]);
  Eigen::Matrix<double, D + 1, 1> bary;
  bary[0] = 1.0 - lambda.sum();
  bary.template tail<D>() = lambda;
  return bary;
}

// Start points around a centroid: 8 directions at half the simplex radius.
template <int D>
std::vector<Eigen::Matrix<double, D, 1>> perturbed_starts(
    const Eigen::Matrix<double, D, 1>& centroid, double radius) {
  std::vector<Eigen::Matrix<double, D, 1>> out;
  for (int k = 0; k < 8; ++k) {
    Eigen::Matrix<double, D, 1> dir;
    if constexpr (D == 2) {
      const double angle = std::numbers::pi * k / 4.0;
      dir << std::cos(angle), std::sin(angle);
    } else {
      dir << (k & 1 ? 1.0 : -1.0), (k & 2 ? 1.0 : -1.0), (k & 4 ? 1.0 : -1.0);
      dir /= std::sqrt(3.0);
    }
    out.push_back(centroid + 0.5 * radius * dir);
  }
  return out;
}

// Reorders indices so that the first has the largest prior (stable).
template <std::size_t K>
std::array<std::size_t, K> anchored(Points points, std::array<std::size_t, K> ids) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < K; ++k) {
    if (points[ids[k]].prior > points[ids[best]].prior) best = k;
  }
  std::rotate(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(best),
              ids.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  return ids;
}

Solution no_measurement_solution(std::size_t j, const WeightedPoint& point) {
  Solution s;
  s.candidate = {point.prior, point.v_tilde, {j}};
  s.detected = {j};
  s.p_guess = point.prior;
  s.no_measurement = true;
  auto& fam = s.povm_family;
  fam.indices = {j};
  fam.n_hats = {Vec3::UnitZ()};
  fam.full = {true};
  fam.base = Eigen::VectorXd::Constant(1, 2.0);
  return s;
}

bool all_priors_equal(Points points) {
  for (const auto& p : points) {
    if (std::abs(p.prior - points[0].prior) > 1e-12) return false;
  }
  return points[0].prior > 0.0;
}

// Assembles a Solution from a validated candidate; nullopt when the alpha
// system is infeasible or the certificate rejects the result.
std::optional<Solution> assemble(Points points, const LagrangeCandidate& candidate,
                                 const Tolerances& tol) {
  std::vector<Detection> dets;
  try {
    dets = detection_vectors(points, candidate, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::GammaCoincidesWithState) return std::nullopt;
    throw;
  }
  if (dets.size() < 2) return std::nullopt;

  Solution s;
  s.candidate = candidate;
  s.p_guess = candidate.gamma0;
  for (const auto& d : dets) s.detected.push_back(d.index);
  try {
    s.povm_family = solve_alphas(dets, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InfeasibleAlphaSystem) return std::nullopt;
    throw;
  }
  if (!certify(points, s.povm(), tol).optimal) return std::nullopt;
  return s;
}

std::optional<Solution> equal_priors_points(Points points, const Tolerances& tol) {
  const auto eligible = eligible_states(points, tol);
  const double p = points[eligible.front()].prior;
  std::vector<Vec3> v;
  for (auto i : eligible) v.push_back(points[i].v_tilde / p);
  const Circumsphere sphere = circumsphere(v);

  Solution s;
  s.candidate.gamma = p * sphere.center;
  s.candidate.gamma0 = p * (1.0 + sphere.radius);
  s.p_guess = s.candidate.gamma0;
  std::vector<Detection> dets;
  for (auto k : sphere.support) {
    const std::size_t i = eligible[k];
    s.detected.push_back(i);
    s.candidate.source.push_back(i);
    dets.push_back({i, (v[k] - sphere.center).normalized()});
  }
  try {
    s.povm_family = solve_alphas(dets, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InfeasibleAlphaSystem) return std::nullopt;
    throw;
  }
  if (!certify(points, s.povm(), tol).optimal) return std::nullopt;
  return s;
}

double worst_margin(const CandidateReport& r) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : r.margins) m = std::min(m, x);
  return m;
}

std::vector<LagrangeCandidate> pair_candidates_sorted(Points points,
                                                      const std::vector<std::size_t>& ids) {
  std::vector<LagrangeCandidate> out;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (auto c = pair_candidate(points, ids[a], ids[b])) out.push_back(*c);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.gamma0 > y.gamma0; });
  return out;
}

}  // namespace

std::vector<std::size_t> eligible_states(Points points, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].prior > 0.0)) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](std::size_t j) {
      return std::abs(points[i].prior - points[j].prior) <= tol.coincidence &&
             (points[i].v_tilde - points[j].v_tilde).norm() <= tol.coincidence;
    });
    if (!duplicate) out.push_back(i);
  }
  return out;
}

std::optional<Solution> check_no_measurement(Points points, const Tolerances& tol) {
  const auto eligible = eligible_states(points, tol);
  if (eligible.empty()) return std::nullopt;
  std::size_t j = eligible.front();
  for (auto i : eligible) {
    if (points[i].prior > points[j].prior) j = i;
  }
  for (auto i : eligible) {
    if (i != j && points[i].prior >= points[j].prior - tol.coincidence) {
      return std::nullopt;  // no strictly greatest prior
    }
  }
  const LagrangeCandidate candidate{points[j].prior, points[j].v_tilde, {j}};
  if (!validate_candidate(points, candidate, tol).valid) return std::nullopt;
  return no_measurement_solution(j, points[j]);
}

std::optional<Solution> check_no_measurement(const Ensemble& ensemble,
                                             const Tolerances& tol) {
  const auto pts = ensemble.points();
  return check_no_measurement(Points(pts), tol);
}

std::optional<LagrangeCandidate> pair_candidate(Points points, std::size_t l,
                                                std::size_t m) {
  const auto h = hyperbola_pair(points, l, m);
  if (!h) return std::nullopt;
  const auto& vl = points[h->l];
  const auto& vm = points[h->m];
  LagrangeCandidate c;
  c.gamma0 = 0.5 * ((vl.prior + vm.prior) + h->d_lm);
  c.gamma = 0.5 * ((vl.v_tilde + vm.v_tilde) + (vl.prior - vm.prior) * h->e_lm);
  c.source = {std::min(h->l, h->m), std::max(h->l, h->m)};
  return c;
}

std::optional<LagrangeCandidate> pair_candidate(const Ensemble& ensemble,
                                                std::size_t l, std::size_t m) {
  const auto pts = ensemble.points();
  return pair_candidate(Points(pts), l, m);
}

CandidateReport validate_candidate(Points points, const LagrangeCandidate& candidate,
                                   const Tolerances& tol) {
  CandidateReport r;
  r.candidate = candidate;
  r.margins.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double margin = candidate.gamma0 - points[i].prior -
                          (points[i].v_tilde - candidate.gamma).norm();
    r.margins.push_back(margin);
    if (margin < -tol.equality) r.violations.emplace_back(i, margin);
  }
  r.valid = r.violations.empty();
  return r;
}

CandidateReport validate_candidate(const Ensemble& ensemble,
                                   const LagrangeCandidate& candidate,
                                   const Tolerances& tol) {
  const auto pts = ensemble.points();
  return validate_candidate(Points(pts), candidate, tol);
}

std::optional<LagrangeCandidate> triple_candidate(Points points, std::size_t l,
                                                  std::size_t m, std::size_t n,
                                                  const Tolerances& tol) {
  for (auto i : {l, m, n}) check_index(points.size(), i);
  const auto ids = anchored<3>(points, {l, m, n});
  const std::array<Vec3, 3> v{points[ids[0]].v_tilde, points[ids[1]].v_tilde,
                              points[ids[2]].v_tilde};
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if ((v[a] - v[b]).norm() <= tol.coincidence) return std::nullopt;
    }
  }
  const PlaneFrame frame = plane_frame_or_line(v, 0);

  using V2 = Eigen::Vector2d;
  std::array<V2, 3> q;
  for (int k = 0; k < 3; ++k) {
    const Vec3 x = frame.apply(v[k]);
    q[k] = V2(x.x(), x.z());
  }
  const std::array<double, 3> p{points[ids[0]].prior, points[ids[1]].prior,
                                points[ids[2]].prior};

  const V2 centroid = (q[0] + q[1] + q[2]) / 3.0;
  double radius = 0.0;
  for (const auto& x : q) radius = std::max(radius, (x - centroid).norm());

  std::vector<V2> starts{centroid};
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (auto c = pair_candidate(points, ids[a], ids[b])) {
        const Vec3 x = frame.apply(c->gamma);
        starts.emplace_back(x.x(), x.z());
      }
    }
  }
  for (const auto& s : perturbed_starts<2>(centroid, radius)) starts.push_back(s);

  for (const auto& start : starts) {
    const auto root = equalize<2>(q, p, start);
    if (!root) continue;
    const auto bary = barycentric<2>(q, *root);
    if (!bary || bary->minCoeff() < -kHullSlack) continue;
    LagrangeCandidate c;
    c.gamma = frame.inverse(Vec3(root->x(), 0.0, root->y()));
    c.gamma0 = p[0] + (v[0] - c.gamma).norm();
    c.source = {ids[0], ids[1], ids[2]};
    std::sort(c.source.begin(), c.source.end());
    return c;
  }
  return std::nullopt;
}

std::optional<LagrangeCandidate> triple_candidate(const Ensemble& ensemble,
                                                  std::size_t l, std::size_t m,
                                                  std::size_t n,
                                                  const Tolerances& tol) {
  const auto pts = ensemble.points();
  return triple_candidate(Points(pts), l, m, n, tol);
}

std::optional<LagrangeCandidate> quad_candidate(Points points, std::size_t l,
                                                std::size_t m, std::size_t n,
                                                std::size_t o,
                                                const Tolerances& tol) {
  for (auto i : {l, m, n, o}) check_index(points.size(), i);
  const auto ids = anchored<4>(points, {l, m, n, o});
  std::array<Vec3, 4> v;
  std::array<double, 4> p;
  for (int k = 0; k < 4; ++k) {
    v[k] = points[ids[k]].v_tilde;
    p[k] = points[ids[k]].prior;
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if ((v[a] - v[b]).norm() <= tol.coincidence) return std::nullopt;
    }
  }
  // Coplanar quadruples are covered by their triples.
  if (!barycentric<3>(v, v[0])) return std::nullopt;

  const Vec3 centroid = (v[0] + v[1] + v[2] + v[3]) / 4.0;
  double radius = 0.0;
  for (const auto& x : v) radius = std::max(radius, (x - centroid).norm());

  std::vector<Vec3> starts{centroid};
  for (int skip = 0; skip < 4; ++skip) {
    std::array<std::size_t, 3> face;
    for (int k = 0, f = 0; k < 4; ++k) {
      if (k != skip) face[static_cast<std::size_t>(f++)] = ids[k];
    }
    if (auto c = triple_candidate(points, face[0], face[1], face[2], tol)) {
      starts.push_back(c->gamma);
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (auto c = pair_candidate(points, ids[a], ids[b])) starts.push_back(c->gamma);
    }
  }
  for (const auto& s : perturbed_starts<3>(centroid, radius)) starts.push_back(s);

  for (const auto& start : starts) {
    const auto root = equalize<3>(v, p, start);
    if (!root) continue;
    const auto bary = barycentric<3>(v, *root);
    if (!bary || bary->minCoeff() < -kHullSlack) continue;
    LagrangeCandidate c;
    c.gamma = *root;
    c.gamma0 = p[0] + (v[0] - c.gamma).norm();
    c.source = {ids[0], ids[1], ids[2], ids[3]};
    std::sort(c.source.begin(), c.source.end());
    return c;
  }
  return std::nullopt;
}

std::optional<LagrangeCandidate> quad_candidate(const Ensemble& ensemble,
                                                std::size_t l, std::size_t m,
                                                std::size_t n, std::size_t o,
                                                const Tolerances& tol) {
  const auto pts = ensemble.points();
  return quad_candidate(Points(pts), l, m, n, o, tol);
}

std::vector<Detection> detection_vectors(Points points,
                                         const LagrangeCandidate& candidate,
                                         const Tolerances& tol) {
  std::vector<Detection> out;
  for (auto i : eligible_states(points, tol)) {
    const Vec3 diff = points[i].v_tilde - candidate.gamma;
    const double dist = diff.norm();
    const double margin = candidate.gamma0 - points[i].prior - dist;
    if (std::abs(margin) > tol.equality) continue;
    if (dist <= tol.coincidence) {
      std::ostringstream os;
      os << "gamma coincides with v~ of detected state " << i;
      throw Error(ErrorCode::GammaCoincidesWithState, os.str(), i);
    }
    out.push_back({i, diff / dist});
  }
  return out;
}

AlphaFamily solve_alphas(std::span<const Detection> detections,
                         const Tolerances& tol) {
  const auto m = static_cast<Eigen::Index>(detections.size());
  if (m < 2) {
    throw Error(ErrorCode::InvalidArgument, "alpha system needs at least two directions");
  }
  Eigen::MatrixXd a(4, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    a(0, j) = 1.0;
    a.block<3, 1>(1, j) = detections[static_cast<std::size_t>(j)].n_hat;
  }
  Eigen::Vector4d b(2.0, 0.0, 0.0, 0.0);

  const auto infeasible = [](const char* why) {
    return Error(ErrorCode::InfeasibleAlphaSystem, why);
  };

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd min_norm = svd.solve(b);
  if ((a * min_norm - b).norm() > tol.completeness) {
    throw infeasible("directions admit no alpha with sum 2 and zero resultant");
  }
  const auto rank = svd.rank();

  // Minimum-norm solution inside alpha >= 0. Any solution supported on F is
  // feasible when its restriction solves the system with nonnegative entries,
  // so the optimum is the smallest such restricted min-norm solution.
  Eigen::VectorXd base;
  if (min_norm.minCoeff() >= -1e-13) {
    base = min_norm;
  } else if (static_cast<std::size_t>(m) <= kMaxSupportSearch) {
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
      std::vector<Eigen::Index> cols;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (mask >> j & 1U) cols.push_back(j);
      }
      if (cols.size() < 2) continue;
      Eigen::MatrixXd sub(4, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t k = 0; k < cols.size(); ++k) {
        sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> sub_svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
      sub_svd.setThreshold(1e-10);
      const Eigen::VectorXd x = sub_svd.solve(b);
      if ((sub * x - b).norm() > 0.1 * tol.completeness || x.minCoeff() < -1e-13) {
        continue;
      }
      if (x.norm() < best_norm) {
        best_norm = x.norm();
        base = Eigen::VectorXd::Zero(m);
        for (std::size_t k = 0; k < cols.size(); ++k) base[cols[k]] = x[static_cast<Eigen::Index>(k)];
      }
    }
    if (base.size() == 0) throw infeasible("no nonnegative alpha solves the completeness system");
  } else {
    throw infeasible("too many detected states for the exact support search");
  }
  base = base.cwiseMax(0.0);
  if (base.maxCoeff() > 1.0 + tol.ball) {
    throw infeasible("alpha exceeds 1");
  }

  AlphaFamily fam;
  for (const auto& d : detections) {
    fam.indices.push_back(d.index);
    fam.n_hats.push_back(d.n_hat);
    fam.full.push_back(false);
  }
  fam.base = base;

  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index k = rank; k < m; ++k) fam.free_directions.push_back(v.col(k));

  const auto nfree = fam.free_directions.size();
  for (const auto& d : fam.free_directions) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::abs(d[i]) < 1e-14) continue;
      const double t0 = -base[i] / d[i];
      const double t1 = (1.0 - base[i]) / d[i];
      lo = std::max(lo, std::min(t0, t1));
      hi = std::min(hi, std::max(t0, t1));
    }
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
    if (nfree > 1) {
      lo /= static_cast<double>(nfree);
      hi /= static_cast<double>(nfree);
    }
    fam.box.push_back({lo, hi});
  }
  fam.box_exact = nfree <= 1;
  return fam;
}

Solution equal_priors_solve(const Ensemble& ensemble, const Tolerances& tol) {
  const auto pts = ensemble.points();
  if (!all_priors_equal(pts)) {
    throw Error(ErrorCode::InvalidArgument, "priors are not all equal");
  }
  std::vector<Vec3> v;
  for (const auto& s : ensemble.states()) v.push_back(s.v);
  // Throws DegenerateAllCoincident before any other work.
  (void)circumsphere(v);
  if (auto s = equal_priors_points(pts, tol)) return *s;
  throw Error(ErrorCode::InfeasibleAlphaSystem,
              "circumsphere support admits no valid measurement");
}

std::vector<CandidateReport> enumerate_candidates(Points points, const Tolerances& tol) {
  const auto ids = eligible_states(points, tol);
  const std::size_t k = ids.size();
  std::vector<CandidateReport> out;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (auto c = pair_candidate(points, ids[a], ids[b])) {
        out.push_back(validate_candidate(points, *c, tol));
      }
      for (std::size_t c = b + 1; c < k; ++c) {
        if (auto t = triple_candidate(points, ids[a], ids[b], ids[c], tol)) {
          out.push_back(validate_candidate(points, *t, tol));
        }
        for (std::size_t d = c + 1; d < k; ++d) {
          if (auto q = quad_candidate(points, ids[a], ids[b], ids[c], ids[d], tol)) {
            out.push_back(validate_candidate(points, *q, tol));
          }
        }
      }
    }
  }
  return out;
}

Solution solve_points(Points points, const Tolerances& tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no states to discriminate");
  const auto ids = eligible_states(points, tol);
  if (ids.empty()) throw Error(ErrorCode::InvalidArgument, "every prior is zero");

  std::optional<CandidateReport> best;
  const auto consider = [&](const LagrangeCandidate& c) -> std::optional<Solution> {
    auto report = validate_candidate(points, c, tol);
    if (report.valid) {
      if (auto s = assemble(points, c, tol)) return s;
    }
    if (!best || worst_margin(report) > worst_margin(*best)) best = std::move(report);
    return std::nullopt;
  };

  if (ids.size() >= 2 && all_priors_equal(points)) {
    if (auto s = equal_priors_points(points, tol)) return *s;
  }
  if (auto s = check_no_measurement(points, tol)) return *s;

  for (const auto& c : pair_candidates_sorted(points, ids)) {
    if (auto s = consider(c)) return *s;
  }
  const std::size_t k = ids.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        if (auto t = triple_candidate(points, ids[a], ids[b], ids[c], tol)) {
          if (auto s = consider(*t)) return *s;
        }
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        for (std::size_t d = c + 1; d < k; ++d) {
          if (auto q = quad_candidate(points, ids[a], ids[b], ids[c], ids[d], tol)) {
            if (auto s = consider(*q)) return *s;
          }
        }
      }
    }
  }
  throw SolverExhausted("no Lagrange candidate passed validation", dual_oracle(points),
                        std::move(best));
}

Solution solve(const Ensemble& ensemble, const Tolerances& tol) {
  const auto pts = ensemble.points();
  return solve_points(Points(pts), tol);
}

std::vector<Decomposition> decompose_povm(const Povm& povm, const Tolerances& tol) {
  std::vector<Decomposition> out;
  const std::size_t m = povm.size();
  if (m < 4 || m > 24) return out;
  const auto els = povm.elements();

  // Element 0 always sits in the first part so each split is seen once.
  for (std::uint32_t mask = 1; mask < (1U << m) - 1; mask += 2) {
    std::array<double, 2> weight{0.0, 0.0};
    std::array<Vec3, 2> resultant{Vec3::Zero(), Vec3::Zero()};
    for (std::size_t k = 0; k < m; ++k) {
      const int part = (mask >> k & 1U) ? 0 : 1;
      weight[part] += els[k].alpha;
      if (!els[k].full_operator) resultant[part] += els[k].alpha * els[k].n_hat;
    }
    if (weight[0] <= tol.completeness || weight[1] <= tol.completeness) continue;
    if (resultant[0].norm() > tol.completeness || resultant[1].norm() > tol.completeness) {
      continue;
    }
    Decomposition d;
    d.weight_w = 0.5 * weight[0];
    std::array<std::vector<PovmElement>, 2> parts;
    for (std::size_t k = 0; k < m; ++k) {
      const int part = (mask >> k & 1U) ? 0 : 1;
      d.subsets[part].push_back(k);
      PovmElement e = els[k];
      e.alpha /= part == 0 ? d.weight_w : 1.0 - d.weight_w;
      parts[part].push_back(e);
    }
    d.rescaled = {Povm::unchecked(std::move(parts[0])), Povm::unchecked(std::move(parts[1]))};
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace qmed
