#pragma once

#include <optional>
#include <string>
#include <vector>

#include "socpart/auxnlp.hpp"
#include "socpart/errors.hpp"
#include "socpart/instance.hpp"
#include "socpart/partition.hpp"
#include "socpart/solver.hpp"

namespace socpart {

// One row of an Algorithm 1 trace. Row k = 0 is the anchor and carries no
// auxiliary-problem diagnostics.
struct TraceRow {
  int k = 0;
  double value = 0.0;
  double optimality = 0.0;
  double violation = 0.0;
  double delta = 0.0;
  double sigma_min_F = 0.0;
  double distance_to_limit = 0.0;
  bool has_aux = false;
};

enum class StopReason {
  kConverged,           // |value_k - value_{k-1}| <= stop_tol
  kMaxIterations,
  kNoProgress,          // auxiliary problem returned eps_bar itself
  kNumericallyDegraded  // partition changed or strict complementarity lost mid-run
};

const char* to_string(StopReason r);

struct DirectionTrace {
  std::vector<TraceRow> rows;
  double limit = 0.0;
  StopReason stop = StopReason::kConverged;
  std::string note;
  int iterations() const { return rows.empty() ? 0 : rows.back().k; }
};

enum class IntervalVerdict { kNonlinearitySubinterval, kSingletonConditionsFail };

const char* to_string(IntervalVerdict v);

struct IntervalReport {
  double anchor = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  OptimalPartition partition;
  DirectionTrace backward;
  DirectionTrace forward;
  IntervalVerdict verdict = IntervalVerdict::kSingletonConditionsFail;
  bool numerically_degraded() const {
    return backward.stop == StopReason::kNumericallyDegraded || forward.stop == StopReason::kNumericallyDegraded;
  }
};

struct Algorithm1Options {
  double stop_tol = 1e-7;
  int max_iter = 200;
  // Tighter than the default partition tolerance so the trace can approach
  // a transition point closely.
  double classification_tol = 1e-9;
  double delta_margin = 1e-12;
  bool parallel = true;
  SolverOptions solver = [] {
    SolverOptions o;
    o.mu_target = 1e-18;
    return o;
  }();
  AuxiliaryOptions aux;
};

// Raised when a solver or SQP failure interrupts a run; carries the trace so far.
class IntervalError : public Error {
 public:
  IntervalError(const Error& cause, IntervalReport partial)
      : Error(cause.code(), cause.detail()), partial_(std::move(partial)) {}
  const IntervalReport& partial() const { return partial_; }

 private:
  IntervalReport partial_;
};

// Algorithm 1 without the connectivity subroutine. Raises
// NOT_STRICTLY_COMPLEMENTARY when eps_bar has T1 u T2 u T3 nonempty.
IntervalReport run_algorithm1(const ParametricInstance& inst, double eps_bar, const Algorithm1Options& opts = {});
IntervalReport run_algorithm1(const ParametricInstance& inst, double eps_bar, double stop_tol, int max_iter);

struct GridScanOptions {
  double classification_tol = kDefaultClassificationTol;
  SolverOptions solver;
  // 0 means hardware concurrency.
  int threads = 0;
};

struct GridScan {
  std::vector<double> grid;
  // nullopt marks a point where the solve or classification failed.
  std::vector<std::optional<OptimalPartition>> partitions;
  std::vector<std::string> errors;
  std::vector<double> objective;
  // Index i flags a partition change between grid[i] and grid[i + 1].
  std::vector<int> change_cells;
};

GridScan grid_scan(const ParametricInstance& inst, double lo, double hi, int n_points,
                   const GridScanOptions& opts = {});
// Same on an explicit strictly increasing grid.
GridScan grid_scan(const ParametricInstance& inst, const std::vector<double>& grid, const GridScanOptions& opts = {});

enum class IntervalKind { kInvariancy, kNonlinearity };

const char* to_string(IntervalKind k);

struct IntervalKindOptions {
  double direction_tol = 1e-6;
  double classification_tol = kDefaultClassificationTol;
  SolverOptions solver;
};

// Samples the open interval (lo, hi) at `samples` equispaced interior points.
// Raises PARTITION_NOT_CONSTANT when the partition varies across samples.
IntervalKind classify_interval_kind(const ParametricInstance& inst, double lo, double hi, int samples,
                                    const IntervalKindOptions& opts = {});

}  // namespace socpart
