#include <doctest.h>

#include <cmath>
#include <fstream>

#include "socpart/errors.hpp"
#include "socpart/io.hpp"
#include "socpart/report.hpp"

using namespace socpart;

TEST_SUITE("io") {
  TEST_CASE("bundled instances") {
    const auto intro = bundled_instance("intro");
    CHECK(intro.structure.num_blocks() == 2);
    CHECK(intro.structure.dims() == std::vector<int>{3, 2});
    CHECK(intro.m() == 3);
    const auto tr = bundled_instance("transition");
    CHECK(tr.structure.dims() == std::vector<int>{3, 2});
    CHECK(tr.m() == 2);
    CHECK(bundled_names().size() == 6);
    CHECK_THROWS_AS(bundled_instance("nope"), Error);
  }

  TEST_CASE("round trip") {
    for (const auto& name : bundled_names()) {
      const auto inst = bundled_instance(name);
      const std::string text = write_instance(inst);
      const auto back = parse_instance(text);
      CHECK(back.A == inst.A);
      CHECK(back.b == inst.b);
      CHECK(back.c == inst.c);
      CHECK(back.cbar == inst.cbar);
      CHECK(back.structure == inst.structure);
      CHECK(write_instance(back) == text);
    }
  }

  TEST_CASE("shipped files match the bundled data") {
    for (const auto& name : bundled_names()) {
      CAPTURE(name);
      const auto file = load_instance_file(std::string(SOCPART_DATA_DIR) + "/" + name + ".soc");
      CHECK(write_instance(file) == write_instance(bundled_instance(name)));
    }
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_instance("CONES\nA\n1\nb\n1\nc\n1\ncbar\n1\n"), ParseError);
    try {
      parse_instance("CONES\n2\nA\n1 x\nb\n1\nc\n1 0\ncbar\n0 0\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_instance("CONES\n2\nA\n1 nan\nb\n1\nc\n1 0\ncbar\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("CONES\n2\nA\n1 0\nb\n1\nc\n1 inf\ncbar\n0 0\n"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance("CONES\n3\nA\n1 0\nb\n1\nc\n1 0\ncbar\n0 0\n"),
                         doctest::Contains("DIMENSION_MISMATCH"), Error);
  }

  TEST_CASE("domain") {
    const auto inst = parse_instance("CONES\n2\nA\n1 0\nb\n1\nc\n0 1\ncbar\n0 1\nDOMAIN -inf 2.5\n");
    REQUIRE(inst.domain);
    CHECK(std::isinf(inst.domain->lo));
    CHECK(inst.domain->hi == 2.5);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1234567891, OutputFormat::kTable) == "0.123457");
    CHECK(format_number(0.1, OutputFormat::kCsv) == "0.10000000000000001");
    CHECK(format_shortest(0.1) == "0.1");
  }

  TEST_CASE("tables") {
    Table t{{"a", "b"}, {{1.5, std::string("x,y")}, {2LL, 0.25}}};
    CHECK(render(t, OutputFormat::kCsv) == "a,b\n1.5,\"x,y\"\n2,0.25\n");
    CHECK(render(t, OutputFormat::kTable) == "  a     b\n1.5   x,y\n  2  0.25\n");
  }

  TEST_CASE("value function") {
    const auto inst = bundled_instance("analytic");
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
    const auto vf = emit_value_function(inst, grid);
    CHECK(vf.concave);
    for (const auto& s : vf.samples) {
      REQUIRE(s.ok);
      // (1 - 2 eps) x1_2 - x1_3 at the closed-form solution.
      const double r = std::sqrt(4 * s.eps * s.eps - 4 * s.eps + 2);
      CHECK(s.psi == doctest::Approx(-r).epsilon(1e-8));
    }
    CHECK(emit_value_function(inst, {0.3}).samples.size() == 1);

    const auto intro = bundled_instance("intro");
    for (double a : {-1.0, 0.0, 0.3}) {
      const double b = a + 0.9;
      const auto v = emit_value_function(intro, {a, 0.5 * (a + b), b});
      CHECK(v.samples[1].psi >= 0.5 * (v.samples[0].psi + v.samples[2].psi) - 1e-7);
    }
  }

  TEST_CASE("digest") {
    const auto a = instance_digest(bundled_instance("intro"));
    CHECK(a.size() == 16);
    CHECK(a == instance_digest(bundled_instance("intro")));
    CHECK(a != instance_digest(bundled_instance("analytic")));
  }
}
