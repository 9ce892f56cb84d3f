#include "socpart/interval_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace socpart {

namespace {

struct DirectionOutcome {
  DirectionTrace trace;
  std::optional<Error> failure;
};

DirectionOutcome run_direction(const ParametricInstance& inst, const SolveReport& start,
                               const OptimalPartition& P0, Sense sense, const Algorithm1Options& opts) {
  DirectionOutcome out;
  DirectionTrace& tr = out.trace;
  const double sign = sense == Sense::kMin ? 1.0 : -1.0;

  SolveReport cur = start;
  DeltaRadii dr = delta_radius(cur.triple, P0);
  tr.rows.push_back({0, cur.triple.eps, 0.0, 0.0, dr.delta, cur.sigma_min_F, 0.0, false});
  tr.stop = StopReason::kMaxIterations;

  AuxiliaryOptions aux = opts.aux;
  aux.post_check = true;
  aux.classification_tol = opts.classification_tol;
  aux.solver = opts.solver;

  try {
    for (int k = 1; k <= opts.max_iter; ++k) {
      const double delta = dr.delta - opts.delta_margin;
      if (!(delta > 0)) {
        tr.stop = StopReason::kNoProgress;
        tr.note = "delta radius vanished";
        break;
      }
      AuxiliaryProblem prob{&inst, cur.triple, delta, sense};
      AuxiliaryResult r;
      try {
        r = solve_auxiliary(prob, aux);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPartitionMismatch && e.code() != ErrorCode::kInconsistentBlock) throw;
        tr.stop = StopReason::kNumericallyDegraded;
        tr.note = e.what();
        break;
      }
      if (r.status == AuxiliaryStatus::kNoProgress) {
        tr.stop = StopReason::kNoProgress;
        break;
      }
      const double prev = cur.triple.eps;
      // alpha_k must not increase and beta_k must not decrease.
      if (sign * (r.eps_star - prev) > 1e-12) {
        tr.stop = StopReason::kNumericallyDegraded;
        tr.note = "trace lost monotonicity";
        break;
      }
      cur = *r.resolved;
      dr = delta_radius(cur.triple, *r.resolved_partition);
      tr.rows.push_back({k, r.eps_star, r.kkt_residual, r.constraint_violation, dr.delta, cur.sigma_min_F, 0.0, true});
      if (std::abs(r.eps_star - prev) <= opts.stop_tol) {
        tr.stop = StopReason::kConverged;
        break;
      }
    }
  } catch (const Error& e) {
    out.failure = e;
  }

  tr.limit = tr.rows.back().value;
  for (auto& row : tr.rows) row.distance_to_limit = std::abs(row.value - tr.limit);
  return out;
}

int thread_count(int requested, int jobs) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(t, 1, std::max(1, jobs));
}

std::vector<double> interior_samples(double lo, double hi, int samples) {
  std::vector<double> out;
  for (int j = 0; j < samples; ++j) out.push_back(lo + (hi - lo) * (j + 1) / (samples + 1));
  return out;
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::kConverged: return "CONVERGED";
    case StopReason::kMaxIterations: return "MAX_ITERATIONS";
    case StopReason::kNoProgress: return "NO_PROGRESS";
    case StopReason::kNumericallyDegraded: return "NUMERICALLY_DEGRADED";
  }
  return "?";
}

const char* to_string(IntervalVerdict v) {
  switch (v) {
    case IntervalVerdict::kNonlinearitySubinterval: return "NONLINEARITY_SUBINTERVAL";
    case IntervalVerdict::kSingletonConditionsFail: return "SINGLETON_CONDITIONS_FAIL";
  }
  return "?";
}

const char* to_string(IntervalKind k) {
  switch (k) {
    case IntervalKind::kInvariancy: return "INVARIANCY";
    case IntervalKind::kNonlinearity: return "NONLINEARITY";
  }
  return "?";
}

IntervalReport run_algorithm1(const ParametricInstance& inst, double eps_bar, const Algorithm1Options& opts) {
  if (!(opts.stop_tol > 0)) throw Error(ErrorCode::kInvalidArgument, "stop tolerance must be positive");
  if (opts.max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be at least 1");
  const SolveReport start = solve(inst, eps_bar, opts.solver);
  const OptimalPartition P0 = classify(start.triple, opts.classification_tol);
  if (!is_strictly_complementary(P0))
    throw Error(ErrorCode::kNotStrictlyComplementary,
                "partition at the starting point is " + P0.to_string());

  DirectionOutcome back, fwd;
  if (opts.parallel) {
    auto fb = std::async(std::launch::async, [&] { return run_direction(inst, start, P0, Sense::kMin, opts); });
    fwd = run_direction(inst, start, P0, Sense::kMax, opts);
    back = fb.get();
  } else {
    back = run_direction(inst, start, P0, Sense::kMin, opts);
    fwd = run_direction(inst, start, P0, Sense::kMax, opts);
  }

  IntervalReport rep;
  rep.anchor = eps_bar;
  rep.partition = P0;
  rep.backward = std::move(back.trace);
  rep.forward = std::move(fwd.trace);
  rep.alpha_hat = rep.backward.limit;
  rep.beta_hat = rep.forward.limit;
  rep.verdict = (rep.alpha_hat < eps_bar && eps_bar < rep.beta_hat) ? IntervalVerdict::kNonlinearitySubinterval
                                                                     : IntervalVerdict::kSingletonConditionsFail;
  if (back.failure) throw IntervalError(*back.failure, rep);
  if (fwd.failure) throw IntervalError(*fwd.failure, rep);
  return rep;
}

IntervalReport run_algorithm1(const ParametricInstance& inst, double eps_bar, double stop_tol, int max_iter) {
  Algorithm1Options o;
  o.stop_tol = stop_tol;
  o.max_iter = max_iter;
  return run_algorithm1(inst, eps_bar, o);
}

GridScan grid_scan(const ParametricInstance& inst, const std::vector<double>& grid, const GridScanOptions& opts) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "grid is empty");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::kInvalidArgument, "grid must be strictly increasing");

  const int n = static_cast<int>(grid.size());
  GridScan out;
  out.grid = grid;
  out.partitions.assign(n, std::nullopt);
  out.errors.assign(n, "");
  out.objective.assign(n, std::nan(""));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        const SolveReport r = solve(inst, grid[i], opts.solver);
        out.objective[i] = r.triple.objective;
        out.partitions[i] = classify(r.triple, opts.classification_tol);
      } catch (const Error& e) {
        out.errors[i] = e.what();
      }
    }
  };
  const int nt = thread_count(opts.threads, n);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int i = 0; i + 1 < n; ++i)
    if (out.partitions[i] && out.partitions[i + 1] && *out.partitions[i] != *out.partitions[i + 1])
      out.change_cells.push_back(i);
  return out;
}

GridScan grid_scan(const ParametricInstance& inst, double lo, double hi, int n_points, const GridScanOptions& opts) {
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "grid_scan needs lo < hi");
  if (n_points < 2) throw Error(ErrorCode::kInvalidArgument, "grid_scan needs at least two points");
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i) grid[i] = lo + (hi - lo) * i / (n_points - 1);
  grid.back() = hi;
  return grid_scan(inst, grid, opts);
}

IntervalKind classify_interval_kind(const ParametricInstance& inst, double lo, double hi, int samples,
                                    const IntervalKindOptions& opts) {
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "interval must satisfy lo < hi");
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  if (samples == 1) return IntervalKind::kInvariancy;

  std::vector<PrimalDualTriple> sols;
  std::optional<OptimalPartition> P;
  for (double e : interior_samples(lo, hi, samples)) {
    SolveReport r = solve(inst, e, opts.solver);
    OptimalPartition q = classify(r.triple, opts.classification_tol);
    if (P && *P != q)
      throw Error(ErrorCode::kPartitionNotConstant,
                  "partition " + q.to_string() + " at " + std::to_string(e) + " differs from " + P->to_string());
    P = q;
    sols.push_back(std::move(r.triple));
  }

  auto moves = [&](const std::vector<int>& idx, bool primal) {
    for (int i : idx) {
      auto dir = [&](const PrimalDualTriple& t) {
        Eigen::VectorXd v = primal ? Eigen::VectorXd(t.x.block(i)) : Eigen::VectorXd(t.s.block(i));
        return Eigen::VectorXd(v / v.norm());
      };
      const Eigen::VectorXd d0 = dir(sols.front());
      for (size_t k = 1; k < sols.size(); ++k)
        if ((dir(sols[k]) - d0).cwiseAbs().maxCoeff() > opts.direction_tol) return true;
    }
    return false;
  };
  std::vector<int> rx = P->R, rs = P->R;
  rx.insert(rx.end(), P->T2.begin(), P->T2.end());
  rs.insert(rs.end(), P->T3.begin(), P->T3.end());
  return (moves(rx, true) || moves(rs, false)) ? IntervalKind::kNonlinearity : IntervalKind::kInvariancy;
}

}  // namespace socpart
