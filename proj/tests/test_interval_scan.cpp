#include <doctest.h>

#include "socpart/errors.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/io.hpp"

using namespace socpart;

namespace {

void check_monotone(const IntervalReport& r) {
  for (size_t k = 1; k < r.backward.rows.size(); ++k) CHECK(r.backward.rows[k].value <= r.backward.rows[k - 1].value);
  for (size_t k = 1; k < r.forward.rows.size(); ++k) CHECK(r.forward.rows[k].value >= r.forward.rows[k - 1].value);
}

}  // namespace

TEST_SUITE("interval_scan") {
  TEST_CASE("intro from 1/2") {
    const auto r = run_algorithm1(bundled_instance("intro"), 0.5, 1e-7, 200);
    CHECK(r.alpha_hat <= 3e-6);
    CHECK(r.beta_hat >= 1 - 3e-6);
    CHECK(r.backward.iterations() <= 40);
    CHECK(r.forward.iterations() <= 40);
    CHECK(r.verdict == IntervalVerdict::kNonlinearitySubinterval);
    CHECK(r.alpha_hat <= r.anchor);
    CHECK(r.anchor <= r.beta_hat);
    check_monotone(r);
    for (const auto* d : {&r.backward, &r.forward})
      for (const auto& row : d->rows) {
        CHECK(row.value > 0.0);
        CHECK(row.value < 1.0);
      }
  }

  TEST_CASE("slow convergence on the analytic instance") {
    const auto r = run_algorithm1(bundled_instance("analytic"), 0.25, 1e-7, 200);
    CHECK(r.forward.iterations() == 200);
    CHECK(r.forward.stop == StopReason::kMaxIterations);
    CHECK(r.beta_hat == doctest::Approx(0.4936).epsilon(0.01));
    CHECK(r.beta_hat < 0.5);
    check_monotone(r);
  }

  TEST_CASE("slow convergence on the degenerate instance") {
    const auto r = run_algorithm1(bundled_instance("degenerate"), 0.5, 1e-7, 200);
    CHECK(r.backward.iterations() == 200);
    CHECK(r.alpha_hat > 0.03);
    CHECK(r.alpha_hat < 0.12);
    check_monotone(r);
  }

  TEST_CASE("anchor must be strictly complementary") {
    CHECK_THROWS_WITH_AS(run_algorithm1(bundled_instance("transition"), 0.0, 1e-7, 10),
                         doctest::Contains("NOT_STRICTLY_COMPLEMENTARY"), Error);
  }

  TEST_CASE("grid scan") {
    const auto s = grid_scan(bundled_instance("intro"), -0.5, 1.5, 21);
    REQUIRE(s.change_cells.size() == 4);
    for (int c : s.change_cells) CHECK(((s.grid[c] <= 0 && s.grid[c + 1] >= 0) || (s.grid[c] <= 1 && s.grid[c + 1] >= 1)));

    CHECK(grid_scan(bundled_instance("transition_tilted"), -0.9, 0.9, 10).change_cells.empty());
    CHECK(grid_scan(bundled_instance("transition_tilted"), -0.5, 0.5, 2).change_cells.empty());
    CHECK_THROWS_AS(grid_scan(bundled_instance("intro"), 1.0, 0.0, 5), Error);
    CHECK_THROWS_AS(grid_scan(bundled_instance("intro"), 0.0, 1.0, 1), Error);
  }

  TEST_CASE("interval kind") {
    CHECK(classify_interval_kind(bundled_instance("intro"), 0.0, 1.0, 5) == IntervalKind::kNonlinearity);
    CHECK(classify_interval_kind(bundled_instance("transition"), 0.5, 1.5, 5) == IntervalKind::kInvariancy);
    CHECK(classify_interval_kind(bundled_instance("intro"), 0.0, 1.0, 1) == IntervalKind::kInvariancy);
    CHECK_THROWS_WITH_AS(classify_interval_kind(bundled_instance("intro"), -0.5, 0.5, 5),
                         doctest::Contains("PARTITION_NOT_CONSTANT"), Error);
  }

  TEST_CASE("subinterval agrees with the grid oracle") {
    struct Case {
      const char* name;
      double anchor;
    };
    for (const Case& c : {Case{"intro", 0.5}, Case{"analytic", 0.25}, Case{"counterexample", 0.25},
                          Case{"degenerate", 0.5}}) {
      CAPTURE(std::string(c.name));
      const auto inst = bundled_instance(c.name);
      const auto r = run_algorithm1(inst, c.anchor, 1e-7, 30);
      // Endpoints sit within solver tolerance of a partition change.
      const double pad = 1e-3 * (r.beta_hat - r.alpha_hat);
      const auto scan = grid_scan(inst, r.alpha_hat + pad, r.beta_hat - pad, 9);
      CHECK(scan.change_cells.empty());
      for (const auto& p : scan.partitions) {
        REQUIRE(p);
        CHECK(*p == r.partition);
      }
    }
  }
}
