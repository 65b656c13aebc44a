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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geometry.hpp"
#include "random_ensembles.hpp"
#include "solver.hpp"
#include "verification.hpp"

using namespace qmed;
using qmed::testing::Rng;
using qmed::testing::ensemble_of;

namespace {

const double kS3 = std::sqrt(3.0);
const double kPi = std::numbers::pi;

Ensemble zero_plus() { return ensemble_of({0.5, 0.5}, {{0, 0, 1}, {1, 0, 0}}); }

// Reference ensembles solved independently with a semidefinite program
// (primal) and a second-order cone program (dual); both agree to 1e-9.
struct Frozen {
  const char* name;
  std::vector<double> priors;
  std::vector<Vec3> bloch;
  double p_guess;
};

const std::vector<Frozen>& frozen_cases() {
  static const std::vector<Frozen> cases{
      {"three mixed", {0.5, 0.3, 0.2}, {{0, 0, 0.9}, {0.6, 0.2, -0.3}, {-0.5, -0.4, 0.1}},
       0.686181760},
      {"four mixed",
       {0.4, 0.25, 0.2, 0.15},
       {{0.1, 0.7, 0.2}, {-0.8, 0, 0.3}, {0.3, -0.6, -0.5}, {0.2, 0.1, -0.9}},
       0.522799928},
      {"five mixed",
       {0.3, 0.25, 0.2, 0.15, 0.1},
       {{0, 0, 1}, {0.9, 0.1, 0}, {-0.2, 0.8, -0.3}, {-0.5, -0.5, -0.5}, {0.1, -0.9, 0.2}},
       0.467750928},
      {"six mixed",
       {0.22, 0.2, 0.18, 0.16, 0.14, 0.1},
       {{0.3, 0.3, 0.3},
        {-0.7, 0.2, 0.1},
        {0.1, -0.8, 0.4},
        {0.5, 0.5, -0.6},
        {-0.2, -0.3, -0.9},
        {0.9, -0.1, 0.1}},
       0.333080152},
      {"skewed tetrahedron",
       {0.28, 0.26, 0.24, 0.22},
       {{0, 0, 1},
        {0.9428090415820634, 0, -1.0 / 3},
        {-0.4714045207910317, 0.816496580927726, -1.0 / 3},
        {-0.4714045207910317, -0.816496580927726, -1.0 / 3}},
       0.508370172},
      {"dominant mixed pair", {0.7, 0.3}, {{0, 0, 0.2}, {0.3, 0, -0.1}}, 0.7},
  };
  return cases;
}

}  // namespace

TEST_SUITE("no measurement") {
  TEST_CASE("heavy maximally mixed state") {
    const auto e = ensemble_of({0.9, 0.1}, {{0, 0, 0}, {0, 0, 1}});
    const auto s = check_no_measurement(e);
    REQUIRE(s);
    CHECK(s->p_guess == doctest::Approx(0.9));
    CHECK(s->no_measurement);
    CHECK(s->detected == std::vector<std::size_t>{0});
    CHECK(s->candidate.gamma.norm() == 0.0);
    const Povm p = s->povm();
    REQUIRE(p.size() == 1);
    CHECK(p.elements()[0].full_operator);
    CHECK(p.elements()[0].alpha == 2.0);
    CHECK(certify(e, p).optimal);
    CHECK(dual_oracle(e).gamma0_star == doctest::Approx(0.9).epsilon(1e-8));
  }

  TEST_CASE("tied priors never qualify") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {0, 0, -1}});
    CHECK_FALSE(check_no_measurement(e));
  }

  TEST_CASE("trine states in the admissible region") {
    for (double p : {1.0 / 3, 0.4, 0.45, 0.49}) {
      for (double f : {0.0, 0.5, 0.99}) {
        CHECK_FALSE(check_no_measurement(trine_ensemble(p, f * (3 * p - 1))));
      }
    }
  }

  TEST_CASE("single state") {
    const auto e = ensemble_of({1.0}, {{0.3, 0, 0}});
    const auto s = solve(e);
    CHECK(s.p_guess == 1.0);
    CHECK(s.no_measurement);
  }
}

TEST_SUITE("pair candidate") {
  TEST_CASE("orthogonal pure states") {
    const auto e = ensemble_of({0.5, 0.5}, {{0, 0, 1}, {0, 0, -1}});
    const auto c = pair_candidate(e, 0, 1);
    REQUIRE(c);
    CHECK(c->gamma.norm() <= 1e-15);
    CHECK(c->gamma0 == doctest::Approx(1.0));
    CHECK(c->source == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("zero versus plus") {
    const auto c = pair_candidate(zero_plus(), 0, 1);
    REQUIRE(c);
    CHECK(c->gamma0 == doctest::Approx(0.5 * (1 + std::sqrt(0.5))).epsilon(1e-14));
    CHECK((c->gamma - Vec3(0.25, 0, 0.25)).norm() <= 1e-15);
    CHECK(dual_oracle(zero_plus()).gamma0_star == doctest::Approx(c->gamma0).epsilon(1e-9));
  }

  TEST_CASE("trine pair at p = 1/2") {
    const auto e = trine_ensemble(0.5, 0.0);
    const auto c = pair_candidate(e, 0, 1);
    REQUIRE(c);
    CHECK(c->gamma0 == doctest::Approx(0.5 * std::sqrt(0.75) + 0.5).epsilon(1e-14));
  }

  TEST_CASE("candidate sits on the focal segment at distance R from the heavier focus") {
    Rng rng(31);
    for (int k = 0; k < 100; ++k) {
      const auto e = testing::random_ensemble(rng, 2);
      const auto c = pair_candidate(e, 0, 1);
      const auto h = hyperbola_pair(e, 0, 1);
      CHECK(c.has_value() == h.has_value());
      if (!c) continue;
      const Vec3 vl = e[h->l].v_tilde;
      const Vec3 vm = e[h->m].v_tilde;
      CHECK((vl - c->gamma).norm() == doctest::Approx(h->r_lm).epsilon(1e-12));
      CHECK((vl - c->gamma).norm() + (vm - c->gamma).norm() ==
            doctest::Approx(h->d_lm).epsilon(1e-12));
    }
  }

  TEST_CASE("not constructible") {
    const auto e = ensemble_of({0.9, 0.1}, {{0, 0, 0}, {0, 0, 1}});
    CHECK_FALSE(pair_candidate(e, 0, 1));
  }
}

TEST_SUITE("validate candidate") {
  TEST_CASE("two-state candidate saturates both states") {
    const auto e = zero_plus();
    const auto r = validate_candidate(e, *pair_candidate(e, 0, 1));
    CHECK(r.valid);
    CHECK(std::abs(r.margins[0]) <= 1e-12);
    CHECK(std::abs(r.margins[1]) <= 1e-12);
    CHECK(r.violations.empty());
  }

  TEST_CASE("trine pair candidate validity follows the boundary") {
    // Boundary at p = 0.45 is 0.348872698.
    const auto bound = trine_boundary(0.45);
    REQUIRE(bound);
    CHECK(*bound == doctest::Approx(0.34887269843972).epsilon(1e-12));
    CHECK(validate_candidate(trine_ensemble(0.45, 0.05),
                             *pair_candidate(trine_ensemble(0.45, 0.05), 0, 1))
              .valid);
    CHECK(validate_candidate(trine_ensemble(0.45, 0.34),
                             *pair_candidate(trine_ensemble(0.45, 0.34), 0, 1))
              .valid);
    const auto e = trine_ensemble(0.45, 0.349);
    const auto r = validate_candidate(e, *pair_candidate(e, 0, 1));
    CHECK_FALSE(r.valid);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].first == 2);
  }

  TEST_CASE("shifted candidate is rejected") {
    const auto e = zero_plus();
    auto c = *pair_candidate(e, 0, 1);
    c.gamma += Vec3(0.1, 0, 0);
    const auto r = validate_candidate(e, c);
    CHECK_FALSE(r.valid);
    CHECK(r.violations.size() == 1);
    CHECK(r.violations[0].second < 0.0);
  }
}

TEST_SUITE("triple candidate") {
  TEST_CASE("trine in the three-element region matches the closed forms") {
    for (auto [p, d] : {std::pair{0.4, 0.19}, {0.45, 0.349}, {0.36, 0.05}, {0.38, 0.13}}) {
      const auto e = trine_ensemble(p, d);
      const auto c = triple_candidate(e, 0, 1, 2);
      REQUIRE(c);
      const auto ref = trine_reference(p, d);
      CHECK(ref.regime == TrineRegime::ThreeElement);
      CHECK(c->gamma0 == doctest::Approx(ref.p_guess).epsilon(1e-12));
      CHECK((c->gamma - ref.gamma).norm() <= 1e-10);
    }
    CHECK(trine_reference(0.4, 0.19).p_guess == doctest::Approx(0.7596913522587).epsilon(1e-12));
  }

  TEST_CASE("symmetric equiprobable trine") {
    const auto e = trine_ensemble(1.0 / 3, 0.0);
    const auto c = triple_candidate(e, 0, 1, 2);
    REQUIRE(c);
    CHECK(c->gamma.norm() <= 1e-12);
    CHECK(c->gamma0 == doctest::Approx(2.0 / 3).epsilon(1e-12));
  }

  TEST_CASE("agrees with the dual oracle when no pair validates") {
    Rng rng(32);
    int hits = 0;
    for (int k = 0; k < 300 && hits < 10; ++k) {
      const auto e = testing::random_ensemble(rng, 3);
      const auto pts = e.points();
      if (check_no_measurement(e)) continue;
      bool pair_ok = false;
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
          if (auto c = pair_candidate(e, a, b)) pair_ok |= validate_candidate(e, *c).valid;
        }
      }
      if (pair_ok) continue;
      const auto c = triple_candidate(e, 0, 1, 2);
      REQUIRE(c);
      CHECK(c->gamma0 == doctest::Approx(dual_oracle(e).gamma0_star).epsilon(1e-7));
      ++hits;
    }
    CHECK(hits == 10);
  }

  TEST_CASE("no intersection inside the triangle") {
    // A heavy central state dominates the light outer ones.
    const auto e = ensemble_of({0.8, 0.1, 0.1}, {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK_FALSE(triple_candidate(e, 0, 1, 2));
  }
}

TEST_SUITE("quad candidate") {
  TEST_CASE("four symmetric states at a generic angle") {
    const auto e = four_symmetric_ensemble(kPi / 5);
    // Coplanar quadruples are handled by their triples.
    CHECK_FALSE(quad_candidate(e, 0, 1, 2, 3));
    const auto s = solve(e);
    CHECK(s.p_guess == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.candidate.gamma.norm() <= 1e-12);
  }

  TEST_CASE("regular tetrahedron") {
    const double r = std::sqrt(8.0 / 9);
    const std::vector<Vec3> v{{0, 0, 1},
                              {r, 0, -1.0 / 3},
                              {-r / 2, r * kS3 / 2, -1.0 / 3},
                              {-r / 2, -r * kS3 / 2, -1.0 / 3}};
    const auto e = ensemble_of({0.25, 0.25, 0.25, 0.25}, v);
    const auto c = quad_candidate(e, 0, 1, 2, 3);
    REQUIRE(c);
    CHECK(c->gamma.norm() <= 1e-12);
    CHECK(c->gamma0 == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("skewed tetrahedron matches frozen value") {
    const auto& f = frozen_cases()[4];
    const auto e = ensemble_of(f.priors, f.bloch);
    const auto c = quad_candidate(e, 0, 1, 2, 3);
    REQUIRE(c);
    CHECK(validate_candidate(e, *c).valid);
    CHECK(c->gamma0 == doctest::Approx(f.p_guess).epsilon(1e-8));
  }
}

TEST_SUITE("alphas") {
  TEST_CASE("antipodal directions give projectors") {
    const std::vector<Detection> d{{0, Vec3(0, 0, 1)}, {1, Vec3(0, 0, -1)}};
    const auto fam = solve_alphas(d);
    CHECK(fam.base[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fam.base[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fam.free_dimension() == 0);
  }

  TEST_CASE("trine directions") {
    const std::vector<Detection> d{
        {0, Vec3(0, 0, 1)}, {1, Vec3(kS3 / 2, 0, -0.5)}, {2, Vec3(-kS3 / 2, 0, -0.5)}};
    const auto fam = solve_alphas(d);
    for (int i = 0; i < 3; ++i) CHECK(fam.base[i] == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(fam.free_dimension() == 0);
  }

  TEST_CASE("four symmetric directions give the alpha_4 interval") {
    for (double theta : {kPi / 6, kPi / 3, kPi / 2, 0.3}) {
      const auto v = four_symmetric_bloch_vectors(theta);
      std::vector<Detection> d;
      for (std::size_t i = 0; i < 4; ++i) d.push_back({i, v[i]});
      const auto fam = solve_alphas(d);
      REQUIRE(fam.free_dimension() == 1);
      CHECK(fam.box_exact);
      const Interval a4 = fam.coordinate_range(3);
      CHECK(std::abs(a4.lo) <= 1e-12);
      CHECK(std::abs(a4.hi - 1.0 / (1.0 + std::cos(theta))) <= 1e-12);
      for (const auto& a : fam.vertices()) {
        const double c = std::cos(theta);
        CHECK(a[0] == doctest::Approx(1 - (1 + c) * a[3]).epsilon(1e-12));
        CHECK(a[2] == doctest::Approx(1 - (1 - c) * a[3]).epsilon(1e-12));
        CHECK(a[1] == doctest::Approx(a[3]).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("same-side directions are infeasible") {
    const std::vector<Detection> d{{0, Vec3(0, 0, 1)}, {1, Vec3(1, 0, 0)}};
    try {
      solve_alphas(d);
      FAIL("expected InfeasibleAlphaSystem");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InfeasibleAlphaSystem);
    }
  }

  TEST_CASE("min-norm solution outside the cone falls back to a feasible support") {
    // Octahedron directions plus one extra: the min-norm point may be negative
    // somewhere but a nonnegative solution exists.
    const std::vector<Detection> d{{0, Vec3(0, 0, 1)},
                                   {1, Vec3(0, 0, -1)},
                                   {2, Vec3(1, 0, 0)},
                                   {3, Vec3(-1, 0, 0)},
                                   {4, Vec3(0.6, 0, 0.8)}};
    const auto fam = solve_alphas(d);
    CHECK(fam.base.minCoeff() >= 0.0);
    CHECK(fam.base.maxCoeff() <= 1.0 + 1e-12);
    Eigen::Vector3d res = Eigen::Vector3d::Zero();
    for (int i = 0; i < 5; ++i) res += fam.base[i] * d[static_cast<std::size_t>(i)].n_hat;
    CHECK(res.norm() <= 1e-10);
    CHECK(fam.base.sum() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fam.free_dimension() == 2);
    CHECK_FALSE(fam.box_exact);
    for (const auto& a : fam.vertices()) {
      CHECK(a.minCoeff() >= -1e-12);
      CHECK(a.maxCoeff() <= 1 + 1e-12);
    }
  }

  TEST_CASE("too few directions") {
    const std::vector<Detection> d{{0, Vec3(0, 0, 1)}};
    CHECK_THROWS_AS(solve_alphas(d), Error);
  }
}

TEST_SUITE("detection vectors") {
  TEST_CASE("two-state directions are opposite") {
    const auto e = zero_plus();
    const auto det = detection_vectors(e.points(), *pair_candidate(e, 0, 1));
    REQUIRE(det.size() == 2);
    const Vec3 expected = (e[0].v_tilde - e[1].v_tilde).normalized();
    CHECK((det[0].n_hat - expected).norm() <= 1e-12);
    CHECK((det[1].n_hat + expected).norm() <= 1e-12);
  }

  TEST_CASE("equiprobable trine directions are the Bloch vectors") {
    const auto e = trine_ensemble(1.0 / 3, 0.0);
    const auto s = solve(e);
    const auto det = detection_vectors(e.points(), s.candidate);
    REQUIRE(det.size() == 3);
    for (const auto& d : det) CHECK((d.n_hat - e[d.index].v).norm() <= 1e-12);
  }

  TEST_CASE("candidate on a detected state") {
    const auto e = ensemble_of({0.9, 0.1}, {{0, 0, 0}, {0, 0, 1}});
    const LagrangeCandidate c{0.9, Vec3::Zero(), {0}};
    try {
      detection_vectors(e.points(), c);
      FAIL("expected GammaCoincidesWithState");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::GammaCoincidesWithState);
      CHECK(err.index().value() == 0);
    }
  }
}

TEST_SUITE("equal priors") {
  TEST_CASE("trine") {
    const auto s = equal_priors_solve(trine_ensemble(1.0 / 3, 0.0));
    CHECK(s.p_guess == doctest::Approx(2.0 / 3).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(s.povm_family.base[i] - 2.0 / 3) <= 1e-10);
    }
  }

  TEST_CASE("pure states around the origin reach 2/N") {
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
      std::vector<StateSpec> specs;
      for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
        specs.push_back({1.0 / static_cast<double>(n), Vec3(std::sin(phi), 0, std::cos(phi))});
      }
      const auto s = equal_priors_solve(Ensemble::make(specs));
      CHECK(s.p_guess == doctest::Approx(2.0 / static_cast<double>(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("interior states dilute the guessing probability") {
    const auto base = equal_priors_solve(trine_ensemble(1.0 / 3, 0.0));
    std::vector<StateSpec> specs;
    const auto v = trine_bloch_vectors();
    for (const auto& x : v) specs.push_back({0.2, x});
    specs.push_back({0.2, Vec3(0.1, 0.1, 0.1)});
    specs.push_back({0.2, Vec3(-0.3, 0, 0.2)});
    const auto s = equal_priors_solve(Ensemble::make(specs));
    CHECK(s.p_guess == doctest::Approx(base.p_guess * 3.0 / 5.0).epsilon(1e-12));
    CHECK(s.detected == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("unequal priors and coincident states are rejected") {
    CHECK_THROWS_AS(equal_priors_solve(ensemble_of({0.4, 0.6}, {{0, 0, 1}, {1, 0, 0}})), Error);
    const auto same = ensemble_of({0.5, 0.5}, {{0, 0, 0.3}, {0, 0, 0.3}});
    try {
      equal_priors_solve(same);
      FAIL("expected DegenerateAllCoincident");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateAllCoincident);
    }
    // The full solver falls back to guessing.
    CHECK(solve(same).p_guess == doctest::Approx(0.5));
  }
}

TEST_SUITE("solve") {
  TEST_CASE("two-state Helstrom relation") {
    const auto e = zero_plus();
    const auto s = solve(e);
    CHECK(s.p_guess == doctest::Approx(0.853553390593).epsilon(1e-12));
    CHECK(s.detected == std::vector<std::size_t>{0, 1});
    CHECK(certify(e, s.povm()).optimal);
  }

  TEST_CASE("trine below the boundary detects the two heavier states") {
    const auto s = solve(trine_ensemble(0.45, 0.05));
    CHECK(s.detected == std::vector<std::size_t>{0, 1});
    CHECK(s.p_guess == doctest::Approx(0.84051248379533).epsilon(1e-12));
    const auto t = solve(trine_ensemble(0.4, 0.1));
    CHECK(t.p_guess == doctest::Approx(0.75).epsilon(1e-12));
  }

  TEST_CASE("trine above the boundary detects all three") {
    const auto s = solve(trine_ensemble(0.45, 0.349));
    CHECK(s.detected.size() == 3);
    CHECK(s.p_guess == doctest::Approx(0.876998358490).epsilon(1e-11));
  }

  TEST_CASE("frozen reference ensembles") {
    for (const auto& f : frozen_cases()) {
      CAPTURE(f.name);
      const auto e = ensemble_of(f.priors, f.bloch);
      const auto s = solve(e);
      CHECK(s.p_guess == doctest::Approx(f.p_guess).epsilon(1e-8));
      CHECK(certify(e, s.povm()).optimal);
    }
  }

  TEST_CASE("random ensembles agree with the dual oracle") {
    Rng rng(33);
    for (int k = 0; k < 50; ++k) {
      const auto e = testing::random_ensemble(rng, 2 + rng.index(5));
      const auto s = solve(e);
      CHECK(std::abs(s.p_guess - dual_oracle(e).gamma0_star) <= 1e-6);
      CHECK(certify(e, s.povm()).optimal);
    }
  }

  TEST_CASE("duplicate states keep only the first copy eligible") {
    const auto e = ensemble_of({0.25, 0.25, 0.5}, {{0, 0, 1}, {0, 0, 1}, {0, 0, -1}});
    const auto s = solve(e);
    CHECK(s.p_guess == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::find(s.detected.begin(), s.detected.end(), 1) == s.detected.end());
    CHECK(certify(e, s.povm()).optimal);
  }

  TEST_CASE("zero-prior states are never detected") {
    const auto e = ensemble_of({0.5, 0.5, 0.0}, {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}});
    const auto s = solve(e);
    CHECK(s.p_guess == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.detected == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("enumerated candidates include the optimum") {
    const auto e = trine_ensemble(0.4, 0.19);
    const auto all = enumerate_candidates(e.points());
    CHECK(all.size() >= 4);  // three pairs and the triple
    const auto valid = std::count_if(all.begin(), all.end(), [](const auto& r) { return r.valid; });
    CHECK(valid >= 1);
    for (const auto& r : all) {
      if (r.valid) CHECK(r.candidate.gamma0 == doctest::Approx(0.7596913522587).epsilon(1e-10));
    }
  }
}

TEST_SUITE("decomposition") {
  TEST_CASE("four symmetric states at a right angle split into two bases") {
    const auto e = four_symmetric_ensemble(kPi / 2);
    const auto s = solve(e);
    const double t[] = {0.5 * (s.povm_family.box[0].lo + s.povm_family.box[0].hi)};
    const Povm p = s.povm_family.povm_at(t);
    REQUIRE(p.size() == 4);
    const auto parts = decompose_povm(p);
    REQUIRE(parts.size() == 1);
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    for (auto k : parts[0].subsets[0]) a.push_back(p.elements()[k].state_index);
    for (auto k : parts[0].subsets[1]) b.push_back(p.elements()[k].state_index);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(((a == std::vector<std::size_t>{0, 2} && b == std::vector<std::size_t>{1, 3}) ||
           (a == std::vector<std::size_t>{1, 3} && b == std::vector<std::size_t>{0, 2})));
    for (const auto& part : parts[0].rescaled) {
      CHECK(part.completeness_residual() <= 1e-10);
      CHECK(certify(e, part).optimal);
    }
  }

  TEST_CASE("trine measurement does not split") {
    const auto s = solve(trine_ensemble(1.0 / 3, 0.0));
    CHECK(decompose_povm(s.povm()).empty());
  }
}
