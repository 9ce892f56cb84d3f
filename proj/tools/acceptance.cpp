// Acceptance harness: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "socpart/auxnlp.hpp"
#include "socpart/cones.hpp"
#include "socpart/errors.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/io.hpp"
#include "socpart/partition.hpp"
#include "socpart/report.hpp"
#include "socpart/solver.hpp"
#include "socpart/transition.hpp"

using namespace socpart;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 11 points with spacing (hi - lo) / 12 starting half a cell in; none lands on
// the midpoint, where two of the instances lose uniqueness.
std::vector<double> interior_grid(double lo, double hi) {
  std::vector<double> out;
  for (int j = 1; j <= 11; ++j) out.push_back(lo + (hi - lo) * (j - 0.5) / 12.0);
  return out;
}

using ClosedForm = std::function<std::pair<Eigen::VectorXd, Eigen::VectorXd>(double)>;

std::pair<Eigen::VectorXd, Eigen::VectorXd> intro_closed(double e) {
  const double r = std::sqrt((1 - e) * (1 - e) + e * e);
  Eigen::VectorXd x(5), s(5);
  x << 1, e / r, (1 - e) / r, (1 - e) / r, e / r - 1;
  s << r, -e, e - 1, 0, 0;
  return {x, s};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> analytic_closed(double e) {
  const double r = std::sqrt(4 * e * e - 4 * e + 2);
  Eigen::VectorXd x(6), s(6);
  x << 1, (2 * e - 1) / r, 1 / r, 2, (2 * e - 1) / r, 2 / r;
  s << r, 1 - 2 * e, -1, 0, 0, 0;
  return {x, s};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> counterexample_closed(double e) {
  const double e2 = e * e, e3 = e2 * e;
  Eigen::VectorXd x(6), s(6);
  x << 4 * e3 - 6 * e2 + e + 2.5, 4 * e2 - 2 * e - 2, -4 * e3 + 6 * e2 + e - 1.5, -4 * e3 + 6 * e2 - e + 1.5,
      6 * e - 4 * e2, 4 * e3 - 6 * e2 - e + 1.5;
  s << 0.5 * e2 - e + 0.625, 0.5 - 0.5 * e, 0.5 * e2 - e + 0.375, 0.5 * e2 + 0.125, -0.5 * e, 0.5 * e2 - 0.125;
  return {x, s};
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    double lo, hi;
    ClosedForm f;
  };
  const std::vector<Case> cases{{"intro", 0.0, 1.0, intro_closed},
                                {"analytic", 0.0, 1.0, analytic_closed},
                                {"counterexample", -0.5, 1.5, counterexample_closed}};
  for (const auto& c : cases) {
    const auto inst = bundled_instance(c.name);
    double worst = 0.0;
    for (double e : interior_grid(c.lo, c.hi)) {
      const auto sol = solve(inst, e);
      const auto [x, s] = c.f(e);
      worst = std::max({worst, (sol.triple.x.values() - x).cwiseAbs().maxCoeff(),
                        (sol.triple.s.values() - s).cwiseAbs().maxCoeff()});
    }
    o.detail << ' ' << c.name << " max err " << g(worst) << ';';
    o.require(worst <= 1e-5, std::string(c.name) + " error > 1e-5");
  }
  const double t = seconds_since(t0);
  o.detail << " time " << g(t) << " s";
  o.require(t < 30, "runtime >= 30 s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto inst = bundled_instance("intro");
  std::vector<double> grid;
  for (int j = 0; j < 21; ++j) grid.push_back(-0.5 + 2.0 * (j + 0.5) / 21.0);
  grid.push_back(0.0);
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  GridScanOptions opts;
  opts.classification_tol = 1e-6;
  const GridScan scan = grid_scan(inst, grid, opts);
  auto expected = [](double e) {
    OptimalPartition p;
    p.R = {0};
    if (e < 0) p.R = {0, 1};
    else if (e == 0) p.T2 = {1};
    else if (e < 1) p.B = {1};
    else if (e == 1) p.T1 = {1};
    else p.N = {1};
    return p;
  };
  int matched = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto& got = scan.partitions[i];
    if (got && *got == expected(grid[i])) {
      ++matched;
    } else {
      o.require(false, "eps " + g(grid[i]) + " gives " + (got ? got->to_string() : scan.errors[i]));
    }
  }
  o.detail << ' ' << matched << '/' << grid.size() << " points match; pi(0) = "
           << (scan.partitions[std::find(grid.begin(), grid.end(), 0.0) - grid.begin()]
                   ? scan.partitions[std::find(grid.begin(), grid.end(), 0.0) - grid.begin()]->to_string()
                   : "-")
           << ", pi(1) = "
           << (scan.partitions[std::find(grid.begin(), grid.end(), 1.0) - grid.begin()]
                   ? scan.partitions[std::find(grid.begin(), grid.end(), 1.0) - grid.begin()]->to_string()
                   : "-");
  return o;
}

bool monotone(const DirectionTrace& t, bool decreasing) {
  for (size_t k = 1; k < t.rows.size(); ++k) {
    const double d = t.rows[k].value - t.rows[k - 1].value;
    if (decreasing ? d > 0 : d < 0) return false;
  }
  return true;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_algorithm1(bundled_instance("intro"), 0.5, 1e-7, 200);
  const double t = seconds_since(t0);
  const int ia = r.backward.iterations(), ib = r.forward.iterations();
  const double a1 = r.backward.rows.size() > 1 ? r.backward.rows[1].value : NAN;
  const double b1 = r.forward.rows.size() > 1 ? r.forward.rows[1].value : NAN;
  o.detail << " alpha_hat " << g(r.alpha_hat) << " (" << ia << " it), beta_hat " << g(r.beta_hat) << " (" << ib
           << " it), k=1: " << g(a1) << ", " << g(b1) << "; time " << g(t) << " s";
  o.require(r.alpha_hat <= 1e-5, "alpha_hat > 1e-5");
  o.require(r.beta_hat >= 1 - 1e-5, "beta_hat < 1 - 1e-5");
  o.require(ia <= 40 && ib <= 40, "more than 40 iterations");
  o.require(r.backward.stop == StopReason::kConverged && r.forward.stop == StopReason::kConverged,
            "a direction did not converge");
  o.require(std::abs(a1 - 0.394746) <= 1e-3, "first alpha off");
  o.require(std::abs(b1 - 0.605254) <= 1e-3, "first beta off");
  o.require(t < 120, "runtime >= 2 min");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto ra = run_algorithm1(bundled_instance("analytic"), 0.25, 1e-7, 200);
  const double b200 = ra.forward.rows.back().value;
  o.detail << " analytic beta_" << ra.forward.iterations() << " = " << g(b200) << ";";
  o.require(ra.forward.iterations() == 200, "analytic forward stopped before the cap");
  o.require(b200 >= 0.48 && b200 <= 0.4995, "beta_200 outside [0.48, 0.4995]");
  o.require(monotone(ra.forward, false) && monotone(ra.backward, true), "analytic trace not monotone");

  const auto rd = run_algorithm1(bundled_instance("degenerate"), 0.5, 1e-7, 200);
  const double a200 = rd.backward.rows.back().value;
  o.detail << " degenerate alpha_" << rd.backward.iterations() << " = " << g(a200);
  o.require(rd.backward.iterations() == 200, "degenerate backward stopped before the cap");
  o.require(a200 >= 0.03 && a200 <= 0.12, "alpha_200 outside [0.03, 0.12]");
  o.require(monotone(rd.forward, false) && monotone(rd.backward, true), "degenerate trace not monotone");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = classify_point(bundled_instance("transition"), 0.0);
  double vprime = NAN;
  if (r.series)
    for (const auto& q : r.series->quantities)
      if (q.set == PartitionSet::kT3 && q.block == 1) vprime = q.values[0];
  o.detail << " transition: " << to_string(r.verdict) << ", v2' = " << g(vprime);
  o.require(r.verdict == TransitionVerdict::kTransitionPoint, "verdict is not TRANSITION_POINT");
  o.require(r.violation && r.violation->order == 1 && r.violation->block == 1 &&
                r.violation->set == PartitionSet::kT3,
            "first violation is not order 1, block 2 in T3");
  o.require(std::abs(vprime + 0.5) <= 1e-6, "v2' not -0.5");

  ClassifyOptions opts;
  opts.K = 10;
  const auto rt = classify_point(bundled_instance("transition_tilted"), 0.0, opts);
  double worst = 0.0;
  if (rt.series)
    for (const auto& q : rt.series->quantities)
      if (q.set == PartitionSet::kT3)
        for (int k = 1; k <= 8; ++k) worst = std::max(worst, std::abs(q.values[k - 1]));
  o.detail << "; tilted: " << to_string(rt.verdict) << ", max |v^(k)| (k <= 8) = " << g(worst);
  o.require(rt.verdict == TransitionVerdict::kNonlinearityMember, "tilted verdict is not NONLINEARITY_MEMBER");
  o.require(rt.series.has_value() && worst <= 1e-6, "tilted derivatives exceed 1e-6");
  const double t = seconds_since(t0);
  o.detail << "; time " << g(t) << " s";
  o.require(t < 10, "runtime >= 10 s");
  return o;
}

// Property suite.
Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;

  // Eigenvalues of L(x) are x1 +- ||x2:n|| and x1.
  double eig_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = nd(rng);
    const SpectralFrame f = spectral_decomposition(x);
    Eigen::VectorXd a = f.eigenvalues;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(arrow_matrix(x));
    Eigen::VectorXd b = es.eigenvalues();
    std::sort(a.data(), a.data() + a.size());
    eig_err = std::max(eig_err, (a - b).cwiseAbs().maxCoeff());
  }
  o.detail << " eigen " << g(eig_err) << ';';
  o.require(eig_err <= 1e-10, "eigenvalue law");

  // grad G against central differences.
  double fd_err = 0.0;
  {
    const auto inst = bundled_instance("transition");
    const auto sol = solve(inst, 0.0);
    const auto reform = build_reformulation(inst, classify(sol.triple));
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd p(reform.dim());
      for (int i = 0; i < p.size(); ++i) p(i) = nd(rng);
      const Eigen::MatrixXd J = jacobian_G(p, reform);
      const double h = 1e-6;
      for (int j = 0; j < p.size(); ++j) {
        Eigen::VectorXd pp = p, pm = p;
        pp(j) += h;
        pm(j) -= h;
        const Eigen::VectorXd col = (eval_G(pp, 0.0, reform) - eval_G(pm, 0.0, reform)) / (2 * h);
        fd_err = std::max(fd_err, (col - J.col(j)).cwiseAbs().maxCoeff() / std::max(1.0, J.col(j).cwiseAbs().maxCoeff()));
      }
    }
  }
  o.detail << " gradG fd " << g(fd_err) << ';';
  o.require(fd_err <= 1e-5, "gradG finite differences");

  // Partition preservation inside S(delta, eps_bar) and delta-halving monotonicity.
  struct Anchor {
    const char* name;
    double eps;
  };
  const std::vector<Anchor> anchors{{"intro", 0.3}, {"intro", 0.5}, {"intro", 0.8}, {"analytic", 0.25}, {"analytic", 0.7}};
  int pairs = 0, preserved = 0;
  bool mono = true;
  for (const auto& a : anchors) {
    const auto inst = bundled_instance(a.name);
    const auto sol = solve(inst, a.eps);
    const auto P = classify(sol.triple);
    const double d0 = delta_radius(sol.triple, P).delta;
    double prev_lo = -INFINITY, prev_hi = INFINITY;
    for (double frac : {0.9, 0.45, 0.225}) {
      ++pairs;
      AuxiliaryOptions ao;
      bool ok = true;
      double lo = NAN, hi = NAN;
      for (Sense sense : {Sense::kMin, Sense::kMax}) {
        try {
          const auto r = solve_auxiliary({&inst, sol.triple, frac * d0, sense}, ao);
          ok = ok && r.resolved_partition && *r.resolved_partition == P;
          (sense == Sense::kMin ? lo : hi) = r.eps_star;
        } catch (const Error&) {
          ok = false;
        }
      }
      preserved += ok;
      // Halving delta shrinks the feasible set.
      if (!(lo >= prev_lo - 1e-9 && hi <= prev_hi + 1e-9)) mono = false;
      prev_lo = lo;
      prev_hi = hi;
    }
  }
  o.detail << " partition kept " << preserved << '/' << pairs << ';';
  o.require(preserved == pairs, "partition preservation");
  o.require(mono, "alpha/beta monotonicity under delta halving");

  // Midpoint concavity of the optimal value function.
  bool concave = true;
  for (const auto& name : bundled_names()) {
    const auto inst = bundled_instance(name);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(-1.0 + 0.1 * i);
    const auto vf = emit_value_function(inst, grid);
    for (size_t i = 0; i + 2 < vf.samples.size(); ++i) {
      const auto &l = vf.samples[i], &m = vf.samples[i + 1], &r = vf.samples[i + 2];
      if (l.ok && m.ok && r.ok && m.psi < 0.5 * (l.psi + r.psi) - 1e-7) concave = false;
    }
  }
  o.detail << " concavity " << (concave ? "ok" : "violated") << ';';
  o.require(concave, "psi midpoint concavity");

  // First derivative against differences of corrected solutions.
  double d_err = 0.0;
  {
    const auto inst = bundled_instance("transition_tilted");
    const auto sol = solve(inst, 0.0);
    const auto reform = build_reformulation(inst, classify(sol.triple));
    const auto base = newton_correct(sol.triple, reform, 0.0);
    const auto series = derivative_series(base.point, reform, 0.0, 1);
    const double h = 1e-4;
    const auto p = newton_correct(solve(inst, h).triple, reform, h);
    const auto m = newton_correct(solve(inst, -h).triple, reform, -h);
    const Eigen::VectorXd fd = (p.point - m.point) / (2 * h);
    d_err = (fd - series.derivatives[0]).norm() / std::max(1e-12, series.derivatives[0].norm());
  }
  o.detail << " chi' rel err " << g(d_err);
  o.require(d_err <= 1e-3, "first derivative vs finite difference");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto inst = bundled_instance("degenerate");
  const auto sol = solve(inst, -0.5);
  const auto P = classify(sol.triple);
  const bool pnd = primal_nondegenerate(inst, sol.triple, P);
  const bool dnd = dual_nondegenerate(inst, sol.triple, P);
  const auto r = classify_point(inst, -0.5);
  o.detail << " partition " << P.to_string() << ", primal nondegenerate " << (pnd ? "TRUE" : "FALSE")
           << ", dual nondegenerate " << (dnd ? "TRUE" : "FALSE") << ", sigma_min(gradF) " << g(sol.sigma_min_F)
           << ", verdict " << to_string(r.verdict);
  o.require(!pnd, "primal nondegeneracy expected FALSE");
  o.require(sol.sigma_min_F <= 1e-10, "sigma_min(gradF) > 1e-10");
  o.require(r.verdict == TransitionVerdict::kInapplicable, "verdict is not INAPPLICABLE");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "Run only these criteria (1-7)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> all{criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7};
  std::set<int> selected(only.begin(), only.end());
  int failed = 0;
  for (int i = 1; i <= 7; ++i) {
    if (!selected.empty() && !selected.count(i)) continue;
    Outcome o;
    try {
      o = all[i - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("criterion %d: %s%s\n", i, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
