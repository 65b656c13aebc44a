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
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "model.hpp"

namespace qmed {

/// Minimal enclosing ball of a point set.
struct Circumsphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  /// Points within support_tol of the boundary, ascending.
  std::vector<std::size_t> support;
};

/// Exact minimal enclosing ball by recursive move-to-front over support sets
/// of at most four points. Throws DegenerateAllCoincident when every point is
/// the same (within 1e-12) and InvalidArgument for fewer than two points.
Circumsphere circumsphere(std::span<const Vec3> points,
                          double support_tol = 1e-9);

/// Hyperbola |v~_m - g| - |v~_l - g| = p_l - p_m with foci v~_l, v~_m.
/// Indices are reordered so that p_l >= p_m.
struct HyperbolaPair {
  std::size_t l = 0;
  std::size_t m = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d_lm = 0.0;
  /// Distance from v~_l to the vertex of the l-branch on the focal segment.
  double r_lm = 0.0;
  Vec3 e_lm = Vec3::Zero();
};

/// nullopt when r_lm <= 0 (the pair admits no candidate). Throws
/// IndexOutOfRange, InvalidArgument for l == m.
std::optional<HyperbolaPair> hyperbola_pair(std::span<const WeightedPoint> points,
                                            std::size_t l, std::size_t m);
std::optional<HyperbolaPair> hyperbola_pair(const Ensemble& ensemble,
                                            std::size_t l, std::size_t m);

/// Rigid map x -> in_plane(rotation x - y_offset e_y) that puts three points
/// in the x-z plane with the anchor point on the +z half-axis.
struct PlaneFrame {
  Mat3 rotation = Mat3::Identity();
  double y_offset = 0.0;
  /// Rotation acting on the (x, z) coordinates.
  Eigen::Matrix2d in_plane_rotation = Eigen::Matrix2d::Identity();

  /// Full linear part (in-plane rotation composed with rotation).
  Mat3 linear() const;
  Vec3 apply(const Vec3& x) const;
  Vec3 inverse(const Vec3& y) const;
  Vec3 apply_direction(const Vec3& d) const { return linear() * d; }
  Vec3 inverse_direction(const Vec3& d) const {
    return linear().transpose() * d;
  }
};

/// Throws CollinearPoints when the triangle area is below 1e-12.
PlaneFrame plane_frame(const std::array<Vec3, 3>& points,
                       std::size_t anchor = 0);

/// Like plane_frame, but collinear triples use the plane through the line
/// whose normal is closest to e_y.
PlaneFrame plane_frame_or_line(const std::array<Vec3, 3>& points,
                               std::size_t anchor = 0);

/// v~_i -> v~_i + shift, i.e. v_i -> v_i + shift / p_i. Throws
/// ShiftLeavesBall naming the first state pushed outside the Bloch ball.
Ensemble translate_ensemble(const Ensemble& ensemble, const Vec3& shift,
                            const Tolerances& tol = {});

}  // namespace qmed
