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

#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <sstream>

#include "error.hpp"

namespace qmed {

namespace {

struct Ball {
  Vec3 center = Vec3::Zero();
  double radius = -1.0;  // empty ball
};

constexpr double kContainSlack = 1e-13;

// Smallest sphere with every support point on its boundary: the center is
// restricted to the affine hull of the support.
Ball ball_through(const std::vector<Vec3>& support) {
  Ball ball;
  if (support.empty()) return ball;
  const Vec3& q0 = support.front();
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  if (k == 0) {
    ball.center = q0;
    ball.radius = 0.0;
    return ball;
  }
  Eigen::MatrixXd edges(3, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    edges.col(j) = support[static_cast<std::size_t>(j) + 1] - q0;
  }
  const Eigen::MatrixXd gram = edges.transpose() * edges;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
  ball.center = q0 + edges * lambda;
  ball.radius = 0.0;
  for (const auto& p : support) {
    ball.radius = std::max(ball.radius, (p - ball.center).norm());
  }
  return ball;
}

bool contains(const Ball& ball, const Vec3& p) {
  return ball.radius >= 0.0 &&
         (p - ball.center).norm() <= ball.radius + kContainSlack;
}

Ball move_to_front(std::span<const Vec3> points, std::list<std::size_t>& order,
                   std::list<std::size_t>::iterator end,
                   std::vector<Vec3>& support) {
  Ball ball = ball_through(support);
  if (support.size() == 4) return ball;
  for (auto it = order.begin(); it != end;) {
    const auto next = std::next(it);
    if (!contains(ball, points[*it])) {
      support.push_back(points[*it]);
      ball = move_to_front(points, order, it, support);
      support.pop_back();
      order.splice(order.begin(), order, it);
    }
    it = next;
  }
  return ball;
}

Mat3 rotation_onto_y(const Vec3& n_hat) {
  // Rodrigues rotation about n_hat x e_y; n_hat is oriented with n_y >= 0.
  const Vec3 axis = n_hat.cross(Vec3::UnitY());
  const double s = axis.norm();
  const double c = n_hat.dot(Vec3::UnitY());
  if (s < 1e-15) return Mat3::Identity();
  Mat3 k;
  k << 0.0, -axis.z(), axis.y(),
       axis.z(), 0.0, -axis.x(),
       -axis.y(), axis.x(), 0.0;
  return Mat3::Identity() + k + k * k * ((1.0 - c) / (s * s));
}

PlaneFrame frame_from_normal(Vec3 normal, const std::array<Vec3, 3>& points,
                             std::size_t anchor) {
  normal.normalize();
  if (normal.y() < 0.0) normal = -normal;
  PlaneFrame frame;
  frame.rotation = rotation_onto_y(normal);
  double y_sum = 0.0;
  for (const auto& p : points) y_sum += (frame.rotation * p).y();
  frame.y_offset = y_sum / 3.0;

  const Vec3 q = frame.rotation * points[anchor];
  const double r = std::hypot(q.x(), q.z());
  if (r > 1e-15) {
    frame.in_plane_rotation << q.z() / r, -q.x() / r,
                               q.x() / r, q.z() / r;
  }
  return frame;
}

void check_index(std::size_t n, std::size_t i) {
  if (i >= n) {
    std::ostringstream os;
    os << "state index " << i << " out of range (size " << n << ")";
    throw Error(ErrorCode::IndexOutOfRange, os.str(), i);
  }
}

}  // namespace

Circumsphere circumsphere(std::span<const Vec3> points, double support_tol) {
  if (points.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "circumsphere needs at least two points");
  }
  double spread = 0.0;
  for (const auto& p : points) spread = std::max(spread, (p - points[0]).norm());
  if (spread <= 1e-12) {
    throw Error(ErrorCode::DegenerateAllCoincident,
                "all points coincide; no enclosing sphere of positive radius");
  }

  std::list<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i) order.push_back(i);
  std::vector<Vec3> support;
  const Ball ball = move_to_front(points, order, order.end(), support);

  Circumsphere out;
  out.center = ball.center;
  out.radius = ball.radius;
  for (const auto& p : points) {
    out.radius = std::max(out.radius, (p - ball.center).norm());
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs((points[i] - out.center).norm() - out.radius) <= support_tol) {
      out.support.push_back(i);
    }
  }
  return out;
}

std::optional<HyperbolaPair> hyperbola_pair(std::span<const WeightedPoint> points,
                                            std::size_t l, std::size_t m) {
  check_index(points.size(), l);
  check_index(points.size(), m);
  if (l == m) {
    throw Error(ErrorCode::InvalidArgument, "hyperbola needs two distinct states");
  }
  if (points[l].prior < points[m].prior) std::swap(l, m);
  HyperbolaPair h;
  h.l = l;
  h.m = m;
  const Vec3 diff = points[l].v_tilde - points[m].v_tilde;
  h.d_lm = diff.norm();
  h.a = 0.5 * (points[l].prior - points[m].prior);
  h.c = 0.5 * h.d_lm;
  h.r_lm = 0.5 * (h.d_lm - (points[l].prior - points[m].prior));
  if (!(h.r_lm > 0.0)) return std::nullopt;
  h.b = std::sqrt(std::max(0.0, h.c * h.c - h.a * h.a));
  h.e_lm = diff / h.d_lm;
  return h;
}

std::optional<HyperbolaPair> hyperbola_pair(const Ensemble& ensemble,
                                            std::size_t l, std::size_t m) {
  const auto pts = ensemble.points();
  return hyperbola_pair(std::span<const WeightedPoint>(pts), l, m);
}

Mat3 PlaneFrame::linear() const {
  Mat3 e = Mat3::Identity();
  e(0, 0) = in_plane_rotation(0, 0);
  e(0, 2) = in_plane_rotation(0, 1);
  e(2, 0) = in_plane_rotation(1, 0);
  e(2, 2) = in_plane_rotation(1, 1);
  return e * rotation;
}

Vec3 PlaneFrame::apply(const Vec3& x) const {
  return linear() * x - y_offset * Vec3::UnitY();
}

Vec3 PlaneFrame::inverse(const Vec3& y) const {
  return linear().transpose() * (y + y_offset * Vec3::UnitY());
}

PlaneFrame plane_frame(const std::array<Vec3, 3>& points, std::size_t anchor) {
  if (anchor > 2) throw Error(ErrorCode::IndexOutOfRange, "anchor must be 0, 1 or 2");
  const Vec3 normal = (points[1] - points[0]).cross(points[2] - points[1]);
  if (0.5 * normal.norm() <= 1e-12) {
    throw Error(ErrorCode::CollinearPoints, "points are collinear");
  }
  return frame_from_normal(normal, points, anchor);
}

PlaneFrame plane_frame_or_line(const std::array<Vec3, 3>& points,
                               std::size_t anchor) {
  try {
    return plane_frame(points, anchor);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CollinearPoints) throw;
  }
  Vec3 dir = Vec3::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Vec3 d = points[j] - points[i];
      if (d.norm() > dir.norm()) dir = d;
    }
  }
  Vec3 normal = Vec3::UnitY();
  if (dir.norm() > 1e-15) {
    const Vec3 u = dir.normalized();
    normal = Vec3::UnitY() - u.y() * u;
    if (normal.norm() < 1e-12) normal = Vec3::UnitX() - u.x() * u;
  }
  return frame_from_normal(normal, points, anchor);
}

Ensemble translate_ensemble(const Ensemble& ensemble, const Vec3& shift,
                            const Tolerances& tol) {
  std::vector<StateSpec> specs;
  specs.reserve(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& s = ensemble[i];
    // A zero-prior state has v~ = 0 whatever v is; it cannot follow the shift.
    Vec3 v = s.v;
    if (s.prior > 0.0) v += shift / s.prior;
    if (v.norm() > 1.0 + tol.ball) {
      std::ostringstream os;
      os << "state " << i << ": shifted Bloch vector has norm " << v.norm();
      throw Error(ErrorCode::ShiftLeavesBall, os.str(), i);
    }
    specs.push_back({s.prior, v});
  }
  return Ensemble::make(specs, tol);
}

}  // namespace qmed
