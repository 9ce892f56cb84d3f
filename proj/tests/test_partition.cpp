#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "socpart/errors.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/io.hpp"
#include "socpart/partition.hpp"

using namespace socpart;

namespace {

OptimalPartition at(const char* name, double eps) { return classify(solve(bundled_instance(name), eps).triple); }

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("classify") {
    const auto t = at("transition", 0.0);
    CHECK(t.R == std::vector<int>{0});
    CHECK(t.T3 == std::vector<int>{1});
    CHECK(t.B.empty());
    CHECK(t.N.empty());
    CHECK(t.to_string() == "({},{},{1},({},{},{2}))");

    CHECK(at("intro", 0.5).to_string() == "({2},{},{1},({},{},{}))");
    // x2 = (2, (2 eps - 1)/r, 2/r) is interior at 0.25 and s2 = 0.
    CHECK(at("analytic", 0.25).to_string() == "({2},{},{1},({},{},{}))");
  }

  TEST_CASE("inconsistent block") {
    const auto inst = bundled_instance("intro");
    auto t = solve(inst, 0.5).triple;
    t.s.block(1) = vec({1, 0});
    t.x.block(1) = vec({1, 0});
    CHECK_THROWS_WITH_AS(classify(t), doctest::Contains("INCONSISTENT_BLOCK"), Error);
  }

  TEST_CASE("strict complementarity") {
    CHECK(is_strictly_complementary(at("intro", 0.5)));
    CHECK_FALSE(is_strictly_complementary(at("transition", 0.0)));
    CHECK_FALSE(is_strictly_complementary(at("intro", 0.0)));
  }

  TEST_CASE("nondegeneracy") {
    {
      const auto inst = bundled_instance("transition");
      const auto t = solve(inst, 0.0).triple;
      const auto P = classify(t);
      CHECK(primal_nondegenerate(inst, t, P));
      CHECK(dual_nondegenerate(inst, t, P));
    }
    {
      // B = {2, 3}, R = {1}: the dual matrix has 5 columns in R^4.
      const auto inst = bundled_instance("degenerate");
      const auto t = solve(inst, -0.5).triple;
      const auto P = classify(t);
      CHECK(dual_nondegeneracy_matrix(inst, t, P).cols() == 5);
      CHECK_FALSE(dual_nondegenerate(inst, t, P));
      CHECK(primal_nondegenerate(inst, t, P));
    }
    {
      // Non-unique dual at 1/2 rules out a primal nondegenerate solution.
      const auto inst = bundled_instance("analytic");
      const auto t = solve(inst, 0.5).triple;
      const auto P = classify(t);
      CHECK_FALSE(primal_nondegenerate(inst, t, P));
      CHECK(dual_nondegenerate(inst, t, P));
    }
    {
      const auto inst = bundled_instance("intro");
      const auto t = solve(inst, 0.5).triple;
      OptimalPartition empty;
      empty.N = {0, 1};
      CHECK_FALSE(primal_nondegenerate(inst, t, empty));
      CHECK(dual_nondegenerate(inst, t, empty));
    }
  }

  TEST_CASE("nondegeneracy holds across the tilted invariancy interval") {
    const auto inst = bundled_instance("transition_tilted");
    for (int i = 0; i < 11; ++i) {
      const double e = -0.9 + 1.8 * i / 10;
      const auto t = solve(inst, e).triple;
      const auto P = classify(t);
      CHECK(primal_nondegenerate(inst, t, P));
      CHECK(dual_nondegenerate(inst, t, P));
    }
  }

  TEST_CASE("delta radius") {
    {
      const auto t = solve(bundled_instance("intro"), 0.5).triple;
      CHECK(delta_radius(t, classify(t)).delta == doctest::Approx(2.93e-1).epsilon(0.2));
    }
    {
      const auto t = solve(bundled_instance("analytic"), 0.25).triple;
      CHECK(delta_radius(t, classify(t)).delta == doctest::Approx(1.10e-1).epsilon(0.2));
    }
    {
      ConeStructure K({2, 3});
      PrimalDualTriple t;
      t.x = ConeVector(K, vec({1, 1, 1, 0, 1}));
      t.s = ConeVector(K, vec({1, -1, 1, 0, -1}));
      OptimalPartition P;
      P.R = {0, 1};
      const DeltaRadii d = delta_radius(t, P);
      CHECK(d.delta == 1.0);
      CHECK(std::isinf(d.delta_B));
      CHECK(std::isinf(d.delta_N));
    }
    const auto t = solve(bundled_instance("transition"), 0.0).triple;
    CHECK_THROWS_WITH_AS(delta_radius(t, classify(t)), doctest::Contains("NOT_STRICTLY_COMPLEMENTARY"), Error);
  }

  TEST_CASE("partition invariants on a fine grid") {
    const auto inst = bundled_instance("intro");
    const GridScan scan = grid_scan(inst, -0.5, 1.5, 101);
    for (size_t i = 0; i < scan.grid.size(); ++i) {
      REQUIRE(scan.partitions[i]);
      const auto& P = *scan.partitions[i];
      CHECK(P.num_blocks() == 2);
      const auto t = solve(inst, scan.grid[i]).triple;
      for (int b : P.B) CHECK(t.s.block(b).norm() <= 1e-6);
      for (int b : P.N) CHECK(t.x.block(b).norm() <= 1e-6);
    }
    // Changes only in the cells containing 0 and 1.
    REQUIRE(scan.change_cells.size() == 4);
    for (int c : scan.change_cells) {
      const double lo = scan.grid[c], hi = scan.grid[c + 1];
      CHECK(((lo <= 0 && 0 <= hi) || (lo <= 1 && 1 <= hi)));
    }
  }

  TEST_CASE("rounding snaps blocks") {
    const auto inst = bundled_instance("transition");
    const auto t = solve(inst, 0.0).triple;
    const auto P = classify(t);
    const auto r = round_to_partition(inst, t, P);
    CHECK(r.x.block(1).norm() == 0.0);
    CHECK(std::abs(cone_margin(r.s.block(1))) <= 1e-15);
    CHECK(std::abs(cone_margin(r.x.block(0))) <= 1e-15);
  }
}
