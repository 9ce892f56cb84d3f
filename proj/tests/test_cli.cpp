#include <doctest.h>

#include <sstream>

#include "socpart/cli.hpp"

using namespace socpart;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "socpart");
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Payload without the timing footer.
std::string payload(const std::string& s) { return s.substr(0, s.rfind("# wall time")); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("transition verdict line") {
    const auto r = run({"transition", "--bundled", "transition", "--at", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("TRANSITION POINT (order 1, v₂′ = -0.5)") != std::string::npos);
    const auto m = run({"transition", "--bundled", "transition_tilted", "--at", "0", "--order", "10"});
    CHECK(m.out.find("NONLINEARITY MEMBER (checked up to order 10)") != std::string::npos);
    const auto d = run({"transition", "--bundled", "degenerate", "--at", "-0.5"});
    CHECK(d.code == 0);
    CHECK(d.out.find("INAPPLICABLE") != std::string::npos);
  }

  TEST_CASE("nonlinearity table") {
    const auto r = run({"nonlinearity", "--bundled", "intro", "--start", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k  ") != std::string::npos);
    CHECK(r.out.find("Optim.") != std::string::npos);
    CHECK(r.out.find("Viol.") != std::string::npos);
    CHECK(r.out.find("sigma_min(gradF)") != std::string::npos);
    CHECK(r.out.find("dist_to_limit") != std::string::npos);
    CHECK(r.out.find("0.394746") != std::string::npos);
  }

  TEST_CASE("solve mentions the value function") {
    const auto r = run({"solve", "--bundled", "analytic", "--at", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("optimal value function") != std::string::npos);
    CHECK(r.out.find("# instance: ") != std::string::npos);
  }

  TEST_CASE("partition") {
    const auto r = run({"partition", "--bundled", "intro", "--at", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("({},{},{1},({},{2},{}))") != std::string::npos);
  }

  TEST_CASE("csv and table carry the same numbers") {
    const auto t = run({"scan", "--bundled", "intro", "--from", "-0.5", "--to", "1.5", "--points", "5"});
    const auto c = run({"scan", "--bundled", "intro", "--from", "-0.5", "--to", "1.5", "--points", "5", "--format", "csv"});
    CHECK(t.code == 0);
    CHECK(c.code == 0);
    std::istringstream ts(payload(t.out)), cs(payload(c.out));
    std::string tl, cl;
    std::vector<double> tv, cv;
    while (std::getline(cs, cl)) {
      if (cl.empty() || cl[0] == '#' || cl[0] == 'e') continue;
      cv.push_back(std::stod(cl.substr(0, cl.find(','))));
      const auto p = cl.rfind("\",");
      cv.push_back(std::stod(cl.substr(p + 2)));
    }
    while (std::getline(ts, tl)) {
      if (tl.empty() || tl[0] == '#' || tl.find("eps") != std::string::npos) continue;
      std::istringstream ls(tl);
      double e, o;
      std::string part;
      ls >> e >> part >> o;
      tv.push_back(e);
      tv.push_back(o);
    }
    REQUIRE(tv.size() == cv.size());
    for (size_t i = 0; i < tv.size(); ++i) CHECK(tv[i] == doctest::Approx(cv[i]).epsilon(1e-5));
  }

  TEST_CASE("deterministic output") {
    const auto a = run({"transition", "--bundled", "transition", "--at", "0", "--format", "csv"});
    const auto b = run({"transition", "--bundled", "transition", "--at", "0", "--format", "csv"});
    CHECK(payload(a.out) == payload(b.out));
  }

  TEST_CASE("value function") {
    const auto r = run({"value", "--bundled", "intro", "--from", "0", "--to", "1", "--points", "11"});
    CHECK(r.code == 0);
    CHECK(r.out.find("concavity check: passed") != std::string::npos);
    CHECK(run({"value", "--bundled", "intro", "--from", "0.5", "--to", "0.5", "--points", "1"}).code == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"solve", "--bundled", "intro"}).code == 2);
    CHECK(run({"solve", "--at", "0"}).code == 2);
    CHECK(run({"solve", "--bundled", "nope", "--at", "0"}).code == 2);
    CHECK(run({"solve", "--bundled", "intro", "--at", "0", "--format", "xml"}).code == 2);
    CHECK(run({"scan", "--bundled", "intro", "--from", "1", "--to", "0"}).code == 2);
    CHECK(run({"solve", "--instance", "/nonexistent/file.soc", "--at", "0"}).code == 2);
    CHECK(run({"transition", "--bundled", "intro", "--at", "0"}).code == 0);
    CHECK(run({"nonlinearity", "--bundled", "transition", "--start", "0"}).code == 3);
    CHECK(run({"--help"}).code == 0);
  }
}
