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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "random_ensembles.hpp"
#include "solver.hpp"
#include "verification.hpp"

using namespace qmed;
using qmed::testing::Rng;
using qmed::testing::ensemble_of;

namespace {

const double kPi = std::numbers::pi;

Povm projective_z() {
  return Povm::make({{0, 1.0, {0, 0, 1}, false}, {1, 1.0, {0, 0, -1}, false}});
}

// Boundary of the two-element trine region, written out independently.
double boundary_squared(double p) {
  return 2 - 6 * p + 5 * p * p - 2 * (1 - 2 * p) * std::sqrt(4 * p * p - 2 * p + 1);
}

}  // namespace

TEST_SUITE("certificate") {
  TEST_CASE("optimal two-state measurement saturates both margins") {
    const auto e = ensemble_of({0.6, 0.4}, {{0, 0, 1}, {0.8, 0, 0.6}});
    const auto s = solve(e);
    const auto r = certify(e, s.povm());
    CHECK(r.optimal);
    CHECK(std::abs(r.psd_margins[0]) <= 1e-12);
    CHECK(std::abs(r.psd_margins[1]) <= 1e-12);
    CHECK(r.gamma0 == doctest::Approx(s.p_guess).epsilon(1e-12));
    CHECK((r.gamma - s.candidate.gamma).norm() <= 1e-12);
  }

  TEST_CASE("trine measurement reconstructs 2/3") {
    const auto e = trine_ensemble(1.0 / 3, 0.0);
    std::vector<PovmElement> els;
    const auto v = trine_bloch_vectors();
    for (std::size_t i = 0; i < 3; ++i) els.push_back({i, 2.0 / 3, v[i], false});
    const auto r = certify(e, Povm::make(els));
    CHECK(r.optimal);
    CHECK(r.gamma0 == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(r.worst_stationarity() <= 1e-14);
  }

  TEST_CASE("swapped assignment fails") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {0, 0, -1}});
    CHECK(certify(e, projective_z()).optimal);
    const Povm swapped =
        Povm::make({{1, 1.0, {0, 0, 1}, false}, {0, 1.0, {0, 0, -1}, false}});
    const auto r = certify(e, swapped);
    CHECK_FALSE(r.optimal);
    CHECK(r.gamma0 == doctest::Approx(0.0));
    CHECK(r.worst_psd_margin() == doctest::Approx(-0.5));
  }

  TEST_CASE("suboptimal complete measurement fails with a negative margin") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}});
    const auto r = certify(e, projective_z());
    CHECK_FALSE(r.optimal);
    CHECK(r.worst_psd_margin() < 0.0);
  }

  TEST_CASE("every member of the alpha family has the same Gamma") {
    const auto e = four_symmetric_ensemble(kPi / 3);
    const auto s = solve(e);
    for (const auto& a : s.povm_family.vertices()) {
      std::vector<PovmElement> els;
      for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a[k] > 1e-14) {
          els.push_back({s.povm_family.indices[static_cast<std::size_t>(k)], a[k],
                         s.povm_family.n_hats[static_cast<std::size_t>(k)], false});
        }
      }
      const auto r = certify(e, Povm::make(els));
      CHECK(r.optimal);
      CHECK(r.gamma0 == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(r.gamma.norm() <= 1e-12);
    }
  }
}

TEST_SUITE("dual oracle") {
  TEST_CASE("zero versus plus") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}});
    CHECK(std::abs(dual_oracle(e).gamma0_star - 0.5 * (1 + std::sqrt(0.5))) <= 1e-6);
  }

  TEST_CASE("single state") {
    const auto e = ensemble_of({1.0}, {{0.2, -0.1, 0.4}});
    const auto r = dual_oracle(e);
    CHECK(r.gamma0_star == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((r.gamma_star - e[0].v_tilde).norm() <= 1e-6);
  }

  TEST_CASE("equiprobable trine") {
    CHECK(std::abs(dual_oracle(trine_ensemble(1.0 / 3, 0.0)).gamma0_star - 2.0 / 3) <= 1e-6);
  }

  TEST_CASE("objective is an upper bound at any point") {
    Rng rng(41);
    for (int k = 0; k < 20; ++k) {
      const auto e = testing::random_ensemble(rng, 4);
      const auto pts = e.points();
      const double best = solve(e).p_guess;
      for (int j = 0; j < 20; ++j) {
        CHECK(dual_objective(pts, rng.ball_vector()) >= best - 1e-12);
      }
    }
  }
}

TEST_SUITE("sampling") {
  TEST_CASE("orthogonal states are always identified") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {0, 0, -1}});
    const auto r = sample_outcomes(e, projective_z(), 10000, 5);
    CHECK(r.empirical_success == 1.0);
    CHECK(r.theoretical_success == doctest::Approx(1.0));
    CHECK(r.confusion[0][1] == 0);
    CHECK(r.confusion[1][0] == 0);
  }

  TEST_CASE("trine measurement within three sigma") {
    const auto e = trine_ensemble(1.0 / 3, 0.0);
    const auto s = solve(e);
    const auto r = sample_outcomes(e, s.povm(), 1000000, 2024);
    CHECK(std::abs(r.z_score) <= 3.0);
    CHECK(r.theoretical_success == doctest::Approx(2.0 / 3).epsilon(1e-12));
    std::uint64_t total = 0;
    for (const auto& row : r.confusion) {
      for (auto c : row) total += c;
    }
    CHECK(total == 3000000);
  }

  TEST_CASE("guessing without measuring") {
    const auto e = ensemble_of({0.7, 0.3}, {{0, 0, 1}, {1, 0, 0}});
    const Povm always_first = Povm::make({{0, 2.0, {0, 0, 1}, true}});
    const auto r = sample_outcomes(e, always_first, 1000, 9);
    CHECK(r.empirical_success == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(r.z_score == 0.0);
  }

  TEST_CASE("repeated seed reproduces the counts") {
    const auto e = trine_ensemble(0.4, 0.1);
    const auto s = solve(e);
    const auto a = sample_outcomes(e, s.povm(), 5000, 77);
    const auto b = sample_outcomes(e, s.povm(), 5000, 77);
    CHECK(a.confusion == b.confusion);
    CHECK(a.empirical_success == b.empirical_success);
    const auto c = sample_outcomes(e, s.povm(), 5000, 78);
    CHECK(a.confusion != c.confusion);
  }

  TEST_CASE("outcome probabilities") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}});
    const auto p = outcome_probabilities(e, projective_z());
    CHECK(p[0][0] == doctest::Approx(1.0));
    CHECK(p[1][0] == doctest::Approx(0.5));
    CHECK(p[1][1] == doctest::Approx(0.5));
    const Povm bad = Povm::unchecked({{0, 1.5, {0, 0, 1}, false}, {1, 1.5, {0, 0, -1}, false}});
    try {
      outcome_probabilities(e, bad);
      FAIL("expected ProbabilityOutOfRange");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::ProbabilityOutOfRange);
    }
  }
}

TEST_SUITE("trine reference") {
  TEST_CASE("symmetric point") {
    const auto r = trine_reference(1.0 / 3, 0.0);
    CHECK(r.regime == TrineRegime::ThreeElement);
    CHECK(r.p_guess == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK_FALSE(trine_boundary(1.0 / 3));
  }

  TEST_CASE("p = 1/2 is two-element Helstrom at 120 degrees") {
    const auto r = trine_reference(0.5, 0.0);
    CHECK(r.regime == TrineRegime::TwoElement);
    CHECK(r.p_guess == doctest::Approx(0.5 * std::sqrt(0.75) + 0.5).epsilon(1e-14));
    CHECK(r.p_guess == doctest::Approx(0.933012701892).epsilon(1e-12));
    const auto e = ensemble_of({0.5, 0.5}, {trine_bloch_vectors()[0], trine_bloch_vectors()[1]});
    CHECK(helstrom_two_state(e) == doctest::Approx(r.p_guess).epsilon(1e-14));
  }

  TEST_CASE("boundary values") {
    for (double p : {0.36, 0.4, 0.45, 0.49}) {
      const auto b = trine_boundary(p);
      const double b2 = boundary_squared(p);
      if (b2 < 0) {
        CHECK_FALSE(b);
      } else {
        REQUIRE(b);
        CHECK(*b == doctest::Approx(std::sqrt(b2)).epsilon(1e-14));
      }
    }
    CHECK(*trine_boundary(0.4) == doctest::Approx(0.18274010069914).epsilon(1e-12));
  }

  TEST_CASE("regimes on either side of the boundary") {
    const double b = *trine_boundary(0.4);
    CHECK(trine_reference(0.4, b - 1e-3).regime == TrineRegime::TwoElement);
    CHECK(trine_reference(0.4, b + 1e-3).regime == TrineRegime::ThreeElement);
    // Both formulas agree on the boundary itself.
    const double two = 0.5 * std::sqrt(3 * 0.16 + b * b) + 0.4;
    CHECK(trine_reference(0.4, b).p_guess == doctest::Approx(two).epsilon(1e-12));
    CHECK(trine_reference(0.4, b + 1e-9).p_guess == doctest::Approx(two).epsilon(1e-8));
  }

  TEST_CASE("outside the region") {
    CHECK_THROWS_AS(trine_reference(0.4, 0.35), Error);
    CHECK_THROWS_AS(trine_reference(0.3, 0.0), Error);
    CHECK_THROWS_AS(trine_reference(0.6, 0.0), Error);
    CHECK_THROWS_AS(trine_ensemble(0.4, -0.01), Error);
    try {
      trine_reference(0.4, 0.35);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfParameterRegion);
    }
  }
}

TEST_SUITE("two-state reference") {
  TEST_CASE("closed forms") {
    CHECK(helstrom_two_state(ensemble_of({0.5, 0.5}, {{0, 0, 1}, {0, 0, -1}})) == doctest::Approx(1.0));
    CHECK(helstrom_two_state(ensemble_of({0.7, 0.3}, {{0, 0, 1}, {0, 0, 1}})) == doctest::Approx(0.7));
    CHECK(helstrom_two_state(ensemble_of({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}})) ==
          doctest::Approx(0.853553390593).epsilon(1e-12));
    try {
      helstrom_two_state(trine_ensemble(1.0 / 3, 0));
      FAIL("expected WrongArity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WrongArity);
    }
  }
}

TEST_SUITE("four symmetric reference") {
  TEST_CASE("alpha_4 bounds") {
    CHECK(four_symmetric_reference(kPi / 2).alpha4.hi == doctest::Approx(1.0));
    CHECK(four_symmetric_reference(kPi / 3).alpha4.hi == doctest::Approx(2.0 / 3).epsilon(1e-14));
    const auto zero = four_symmetric_reference(0.0);
    CHECK(zero.alpha4.hi == doctest::Approx(0.5));
    CHECK(zero.degenerate);
    CHECK_THROWS_AS(four_symmetric_reference(2.0), Error);
  }

  TEST_CASE("extreme assignments at pi/3") {
    const auto r = four_symmetric_reference(kPi / 3);
    CHECK(r.lower_extreme[0] == doctest::Approx(1.0));
    CHECK(r.lower_extreme[1] == doctest::Approx(0.0));
    CHECK(r.lower_extreme[2] == doctest::Approx(1.0));
    CHECK(r.upper_extreme[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.upper_extreme[1] == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(r.upper_extreme[2] == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(r.upper_extreme[3] == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK_FALSE(r.pi_half_split);
  }

  TEST_CASE("right-angle split into Z and X bases") {
    const auto r = four_symmetric_reference(kPi / 2);
    REQUIRE(r.pi_half_split);
    const auto e = four_symmetric_ensemble(kPi / 2);
    for (const auto& part : *r.pi_half_split) CHECK(certify(e, part).optimal);
  }
}

TEST_SUITE("canonical three-state form") {
  TEST_CASE("subnormalized vectors reproduce the ensemble") {
    ThreeStateCanonical c;
    c.a = 0.9;
    c.b = 0.7;
    c.c = 0.5;
    c.theta = 1.0;
    c.phi = 2.5;
    c.priors = {0.5, 0.3, 0.2};
    const auto e = c.ensemble();
    CHECK(e[0].v.isApprox(Vec3(0, 0, 0.9)));
    CHECK(e[1].v.norm() == doctest::Approx(0.7));
    CHECK(std::abs(e[2].v.y()) <= 1e-15);
    const auto sub = c.subnormalized();
    CHECK(sub[1].isApprox(0.3 * e[1].v));
  }
}
