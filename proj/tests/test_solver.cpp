#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "socpart/errors.hpp"
#include "socpart/io.hpp"
#include "socpart/partition.hpp"
#include "socpart/solver.hpp"

using namespace socpart;

TEST_SUITE("solver") {
  TEST_CASE("closed forms at eps = 0") {
    const double r2 = std::sqrt(2.0);
    const auto a = solve(bundled_instance("analytic"), 0.0);
    CHECK(max_abs(a.triple.x.values() - vec({1, -1 / r2, 1 / r2, 2, -1 / r2, r2})) <= 1e-6);
    CHECK(max_abs(a.triple.s.values() - vec({r2, 1, -1, 0, 0, 0})) <= 1e-6);

    const auto c = solve(bundled_instance("counterexample"), 0.0);
    CHECK(max_abs(c.triple.x.values() - vec({2.5, -2, -1.5, 1.5, 0, 1.5})) <= 1e-6);
  }

  TEST_CASE("residuals and weak duality") {
    for (const auto& name : bundled_names()) {
      const auto inst = bundled_instance(name);
      for (double e : {-0.3, 0.2, 0.7}) {
        const auto r = solve(inst, e);
        CHECK(r.triple.gap >= -1e-14);
        CHECK(r.triple.gap <= 1e-8);
        CHECK(r.triple.primal_residual <= 1e-8);
        CHECK(r.triple.dual_residual <= 1e-8);
        const double gap = inst.objective(e).dot(r.triple.x.values()) - inst.b.dot(r.triple.y);
        CHECK(std::abs(gap - r.triple.gap) <= 1e-8);
      }
    }
  }

  TEST_CASE("sigma_min of grad F") {
    const auto intro = solve(bundled_instance("intro"), 0.5);
    CHECK(intro.sigma_min_F == doctest::Approx(1.69e-1).epsilon(0.2));
    CHECK(solve(bundled_instance("transition"), 0.0).sigma_min_F > 0.0);
    for (double e : {-2.0, -0.5, -0.1}) CHECK(solve(bundled_instance("degenerate"), e).sigma_min_F <= 1e-10);
  }

  TEST_CASE("jacobian of F") {
    const auto inst = bundled_instance("intro");
    auto t = solve(inst, 0.5).triple;
    t.x.values().setZero();
    t.s.values().setZero();
    const Eigen::MatrixXd J = jacobian_F(inst, t);
    const int n = inst.n(), m = inst.m();
    CHECK(J.rows() == 2 * n + m);
    CHECK(J.bottomRows(n).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sigma_min(J) == 0.0);
  }

  TEST_CASE("interior point check") {
    CHECK(check_interior_point(bundled_instance("intro"), 0.5).holds);
    CHECK(check_interior_point(bundled_instance("counterexample"), 0.0).holds);
    auto bad = bundled_instance("intro");
    bad.b << -1, 0, 1;  // x1_1 = -1 is outside the cone
    CHECK_FALSE(check_interior_point(bad, 0.5).holds);
  }

  TEST_CASE("partition stable under a tighter solver tolerance") {
    for (const auto& name : bundled_names()) {
      const auto inst = bundled_instance(name);
      SolverOptions a, b;
      a.tol = 1e-8;
      b.tol = 1e-9;
      for (double e : {-0.3, 0.25, 0.75})
        CHECK(classify(solve(inst, e, a).triple) == classify(solve(inst, e, b).triple));
    }
  }

  TEST_CASE("infeasible instance is reported") {
    auto bad = bundled_instance("intro");
    bad.b << -1, 0, 1;
    CHECK_THROWS_AS(solve(bad, 0.5), Error);
  }
}
