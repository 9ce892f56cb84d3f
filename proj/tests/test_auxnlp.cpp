#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "socpart/auxnlp.hpp"
#include "socpart/io.hpp"

using namespace socpart;

namespace {

struct Anchor {
  ParametricInstance inst;
  PrimalDualTriple triple;
  OptimalPartition partition;
  double delta;
};

Anchor anchor(const char* name, double eps) {
  Anchor a{bundled_instance(name), {}, {}, 0.0};
  a.triple = solve(a.inst, eps).triple;
  a.partition = classify(a.triple);
  a.delta = delta_radius(a.triple, a.partition).delta;
  return a;
}

}  // namespace

TEST_SUITE("auxnlp") {
  TEST_CASE("first step on the intro instance") {
    const auto a = anchor("intro", 0.5);
    const auto lo = solve_auxiliary({&a.inst, a.triple, a.delta - 1e-12, Sense::kMin});
    const auto hi = solve_auxiliary({&a.inst, a.triple, a.delta - 1e-12, Sense::kMax});
    CHECK(lo.eps_star == doctest::Approx(0.394746).epsilon(1e-3));
    CHECK(hi.eps_star == doctest::Approx(0.605254).epsilon(1e-3));
    CHECK(std::abs(lo.eps_star - 0.394746) <= 1e-3);
    CHECK(std::abs(hi.eps_star - 0.605254) <= 1e-3);
    CHECK(lo.constraint_violation <= 1e-12);
    CHECK(hi.constraint_violation <= 1e-12);
    REQUIRE(lo.resolved_partition);
    CHECK(*lo.resolved_partition == a.partition);
  }

  TEST_CASE("zero radius pins eps") {
    const auto a = anchor("intro", 0.5);
    const auto r = solve_auxiliary({&a.inst, a.triple, 0.0, Sense::kMin});
    CHECK(r.eps_star == 0.5);
    CHECK(r.status == AuxiliaryStatus::kNoProgress);
  }

  TEST_CASE("residuals") {
    const auto a = anchor("intro", 0.5);
    const AuxiliaryProblem prob{&a.inst, a.triple, 0.1, Sense::kMin};
    CHECK(residuals(a.triple, prob).violation <= 1e-15);
    auto bad = a.triple;
    bad.s.values()(0) += 1e-3;
    bad.y(0) -= 1e-3;  // keeps dual feasibility, breaks x o s = 0
    CHECK(residuals(bad, prob).violation >= 1e-3 * 0.999);
  }

  TEST_CASE("negative radius is rejected") {
    const auto a = anchor("intro", 0.5);
    CHECK_THROWS(solve_auxiliary({&a.inst, a.triple, -1.0, Sense::kMin}));
  }

  TEST_CASE("post-check at half radius") {
    struct Case {
      const char* name;
      std::vector<double> anchors;
    };
    for (const Case& c : {Case{"intro", {0.2, 0.35, 0.5, 0.65, 0.8}}, Case{"analytic", {0.1, 0.2, 0.3, 0.7, 0.85}},
                          Case{"counterexample", {-0.3, -0.1, 0.1, 0.9, 1.2}}}) {
      for (double e : c.anchors) {
        CAPTURE(std::string(c.name));
        CAPTURE(e);
        const auto a = anchor(c.name, e);
        for (Sense s : {Sense::kMin, Sense::kMax}) {
          const auto r = solve_auxiliary({&a.inst, a.triple, a.delta / 2, s});
          REQUIRE(r.resolved_partition);
          CHECK(*r.resolved_partition == a.partition);
        }
      }
    }
  }

  TEST_CASE("shrinking radius moves eps_star towards the anchor") {
    const auto a = anchor("intro", 0.5);
    double prev = INFINITY;
    for (int k = 1; k <= 6; ++k) {
      const auto r = solve_auxiliary({&a.inst, a.triple, a.delta / std::pow(2.0, k), Sense::kMin});
      const double d = std::abs(r.eps_star - 0.5);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }

  TEST_CASE("feasible-set monotonicity") {
    const auto a = anchor("analytic", 0.25);
    double lo_prev = -INFINITY, hi_prev = INFINITY;
    for (double f : {0.9, 0.45, 0.2, 0.1}) {
      const double lo = solve_auxiliary({&a.inst, a.triple, f * a.delta, Sense::kMin}).eps_star;
      const double hi = solve_auxiliary({&a.inst, a.triple, f * a.delta, Sense::kMax}).eps_star;
      CHECK(lo >= lo_prev - 1e-9);
      CHECK(hi <= hi_prev + 1e-9);
      lo_prev = lo;
      hi_prev = hi;
    }
  }
}
