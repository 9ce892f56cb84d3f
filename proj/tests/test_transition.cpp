#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "socpart/errors.hpp"
#include "socpart/io.hpp"
#include "socpart/transition.hpp"

using namespace socpart;

namespace {

ReformulationDN reform_at(const ParametricInstance& inst, double eps) {
  return build_reformulation(inst, classify(solve(inst, eps).triple));
}

}  // namespace

TEST_SUITE("transition") {
  TEST_CASE("layout") {
    const auto inst = bundled_instance("transition");
    const auto r = reform_at(inst, 0.0);
    CHECK(r.dim() == 14);
    CHECK(r.z_blocks == std::vector<int>{0, 1});
    CHECK(r.v_blocks.size() == 2);

    OptimalPartition allB;
    allB.B = {0, 1};
    const auto rb = build_reformulation(inst, allB);
    CHECK(rb.z_blocks.empty());
    CHECK(rb.v_blocks.empty());
    CHECK(rb.dim() == inst.m() + inst.n());

    OptimalPartition wrong;
    wrong.B = {0};
    CHECK_THROWS_AS(build_reformulation(inst, wrong), Error);
  }

  TEST_CASE("all-B reform is linear, all-N forces x = 0") {
    const auto inst = bundled_instance("transition");
    OptimalPartition allB;
    allB.B = {0, 1};
    const auto rb = build_reformulation(inst, allB);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Eigen::VectorXd p(rb.dim()), q(rb.dim());
    for (int i = 0; i < p.size(); ++i) {
      p(i) = nd(rng);
      q(i) = nd(rng);
    }
    CHECK(jacobian_G(p, rb) == jacobian_G(q, rb));

    OptimalPartition allN;
    allN.N = {0, 1};
    const auto rn = build_reformulation(inst, allN);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(rn.dim());
    z(rn.u_offset(1)) = 2.0;
    const Eigen::VectorXd G = eval_G(z, 0.0, rn);
    // u rows of block 2 follow those of block 1.
    CHECK(max_abs(G.segment(inst.m() + inst.structure.dim(0), 2) - vec({-2, 0})) == 0.0);
  }

  TEST_CASE("eval_G") {
    const auto inst = bundled_instance("transition");
    const auto r = reform_at(inst, 0.0);
    const auto t = round_to_partition(inst, solve(inst, 0.0).triple, r.partition);
    CHECK(eval_G(point_from_triple(t, r), 0.0, r).norm() <= 1e-8);
    CHECK_THROWS_WITH_AS(eval_G(Eigen::VectorXd::Zero(3), 0.0, r), doctest::Contains("LAYOUT_MISMATCH"), Error);

    ParametricInstance z = inst;
    z.b.setZero();
    z.c.setZero();
    const auto rz = build_reformulation(z, r.partition);
    CHECK(eval_G(Eigen::VectorXd::Zero(rz.dim()), 0.0, rz).norm() == 0.0);

    // Linear in w: only the feasibility rows move.
    Eigen::VectorXd p = point_from_triple(t, r);
    const Eigen::VectorXd G0 = eval_G(p, 0.0, r);
    p.head(inst.m()) += vec({0.1, -0.2});
    const Eigen::VectorXd d = eval_G(p, 0.0, r) - G0;
    const int feas_begin = inst.m() + 5;  // w rows, then u rows of R and T3 (3 + 2)
    CHECK(max_abs(d.head(feas_begin)) == 0.0);
    CHECK(max_abs(d.tail(2)) == 0.0);
    CHECK(max_abs(d.segment(feas_begin, inst.n())) > 0.0);
  }

  TEST_CASE("closed-form points of the analytic instance solve G") {
    const auto inst = bundled_instance("analytic");
    const auto r = reform_at(inst, 0.25);
    for (double e : {0.05, 0.15, 0.25, 0.35, 0.45}) {
      const double q = std::sqrt(4 * e * e - 4 * e + 2);
      ConeStructure K = inst.structure;
      ConeVector x(K, vec({1, (2 * e - 1) / q, 1 / q, 2, (2 * e - 1) / q, 2 / q}));
      ConeVector s(K, vec({q, 1 - 2 * e, -1, 0, 0, 0}));
      // y from A^T y = c + eps cbar - s on the rows where A is an identity.
      Eigen::VectorXd y = inst.A.transpose().colPivHouseholderQr().solve(inst.objective(e) - s.values());
      const auto t = make_triple(inst, e, x, y, s);
      CHECK(eval_G(point_from_triple(t, r), e, r).norm() <= 1e-10);
    }
  }

  TEST_CASE("jacobian matches central differences") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (const char* name : {"transition", "intro", "degenerate"}) {
      const auto inst = bundled_instance(name);
      const auto r = reform_at(inst, name == std::string("intro") ? 0.0 : 0.5);
      for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd p(r.dim());
        for (int i = 0; i < p.size(); ++i) p(i) = nd(rng);
        const Eigen::MatrixXd J = jacobian_G(p, r);
        for (int j = 0; j < p.size(); ++j) {
          Eigen::VectorXd a = p, b = p;
          a(j) += 1e-6;
          b(j) -= 1e-6;
          const Eigen::VectorXd fd = (eval_G(a, 0.3, r) - eval_G(b, 0.3, r)) / 2e-6;
          CHECK(max_abs(fd - J.col(j)) <= 1e-5 * std::max(1.0, max_abs(J.col(j))));
        }
      }
    }
  }

  TEST_CASE("newton correction") {
    const auto inst = bundled_instance("transition");
    const auto sol = solve(inst, 0.0);
    const auto r = build_reformulation(inst, classify(sol.triple));
    const auto n = newton_correct(sol.triple, r, 0.0);
    CHECK(n.residual <= 1e-12);
    CHECK(r.in_open_cone(n.point));
    CHECK(n.sigma_min > 1e-6);

    const auto again = newton_correct(n.point, r, 0.0);
    CHECK(again.iterations == 0);
    CHECK(again.point == n.point);

    const auto back = triple_from_point(n.point, 0.0, r);
    CHECK(back.primal_residual <= 1e-12);
    CHECK(back.dual_residual <= 1e-12);
  }

  TEST_CASE("newton on the degenerate instance hits a singular jacobian") {
    const auto inst = bundled_instance("degenerate");
    const auto sol = solve(inst, -0.5);
    const auto r = build_reformulation(inst, classify(sol.triple));
    CHECK_THROWS_WITH_AS(newton_correct(sol.triple, r, -0.5), doctest::Contains("SINGULAR_JACOBIAN"), Error);
  }

  TEST_CASE("derivative series") {
    const auto inst = bundled_instance("transition");
    const auto sol = solve(inst, 0.0);
    const auto r = build_reformulation(inst, classify(sol.triple));
    const auto n = newton_correct(sol.triple, r, 0.0);
    const auto s1 = derivative_series(n.point, r, 0.0, 1);
    REQUIRE(s1.quantities.size() == 1);
    CHECK(s1.quantities[0].set == PartitionSet::kT3);
    CHECK(s1.quantities[0].block == 1);
    CHECK(std::abs(s1.quantities[0].values[0] + 0.5) <= 1e-6);
    CHECK_THROWS_AS(derivative_series(n.point, r, 0.0, 0), Error);

    auto flat = inst;
    flat.cbar.setZero();
    const auto rf = build_reformulation(flat, r.partition);
    const auto sf = derivative_series(n.point, rf, 0.0, 5);
    for (const auto& d : sf.derivatives) CHECK(d.norm() == 0.0);
  }

  TEST_CASE("tilted instance derivatives vanish") {
    const auto inst = bundled_instance("transition_tilted");
    const auto sol = solve(inst, 0.0);
    const auto r = build_reformulation(inst, classify(sol.triple));
    const auto n = newton_correct(sol.triple, r, 0.0);
    const auto s = derivative_series(n.point, r, 0.0, 10);
    CHECK(s.order() == 10);
    for (int k = 1; k <= 8; ++k) CHECK(std::abs(s.quantities[0].values[k - 1]) <= 1e-6);
    for (double res : s.residuals) CHECK(res <= 1e-10);

    // First derivative against differences of corrected solutions.
    const double h = 1e-4;
    const auto p = newton_correct(solve(inst, h).triple, r, h);
    const auto m = newton_correct(solve(inst, -h).triple, r, -h);
    const Eigen::VectorXd fd = (p.point - m.point) / (2 * h);
    CHECK((fd - s.derivatives[0]).norm() <= 1e-3 * s.derivatives[0].norm());
  }

  TEST_CASE("first derivative on the analytic nonlinearity interval") {
    const auto inst = bundled_instance("analytic");
    const double e = 0.25, h = 1e-4;
    const auto r = reform_at(inst, e);
    const auto n = newton_correct(solve(inst, e).triple, r, e);
    const auto s = derivative_series(n.point, r, e, 3);
    const auto p = newton_correct(solve(inst, e + h).triple, r, e + h);
    const auto m = newton_correct(solve(inst, e - h).triple, r, e - h);
    const Eigen::VectorXd fd = (p.point - m.point) / (2 * h);
    CHECK((fd - s.derivatives[0]).norm() <= 1e-3 * s.derivatives[0].norm());
    const Eigen::VectorXd fd2 = (p.point - 2 * n.point + m.point) / (h * h);
    CHECK((fd2 - s.derivatives[1]).norm() <= 1e-2 * std::max(1.0, s.derivatives[1].norm()));
  }

  TEST_CASE("classify point") {
    const auto t = classify_point(bundled_instance("transition"), 0.0);
    CHECK(t.verdict == TransitionVerdict::kTransitionPoint);
    REQUIRE(t.violation);
    CHECK(t.violation->order == 1);
    CHECK(t.violation->block == 1);
    CHECK(t.violation->set == PartitionSet::kT3);
    CHECK(t.violation->value == doctest::Approx(-0.5).epsilon(1e-6));

    ClassifyOptions o;
    o.K = 10;
    const auto m = classify_point(bundled_instance("transition_tilted"), 0.0, o);
    CHECK(m.verdict == TransitionVerdict::kNonlinearityMember);
    CHECK(m.orders_checked == 10);
    CHECK(m.note.find("order 10") != std::string::npos);

    const auto v = classify_point(bundled_instance("intro"), 0.5);
    CHECK(v.verdict == TransitionVerdict::kNonlinearityMember);
    CHECK(v.note.find("vacuous") != std::string::npos);

    const auto d = classify_point(bundled_instance("degenerate"), -0.5);
    CHECK(d.verdict == TransitionVerdict::kInapplicable);
    CHECK_FALSE(d.series);
  }

  TEST_CASE("growth factor") {
    CHECK(derivative_growth(1) == 1.0);
    CHECK(derivative_growth(3) == doctest::Approx(10.0));
  }
}
