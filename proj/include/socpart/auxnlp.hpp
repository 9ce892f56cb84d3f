#pragma once

#include <optional>

#include "socpart/instance.hpp"
#include "socpart/partition.hpp"
#include "socpart/solver.hpp"

namespace socpart {

enum class Sense { kMin, kMax };

// min / max eps  s.t.  A x = b,  A^T y + s = c + eps cbar,  x o s = 0,
//                      ||x - x*||^2 <= delta^2,  ||s - s*||^2 <= delta^2,
//                      eps within the instance domain bounds (when present),
// where (x*, y*, s*) is the anchor solution at eps_bar = anchor.eps.
struct AuxiliaryProblem {
  const ParametricInstance* instance = nullptr;
  PrimalDualTriple anchor;
  double delta = 0.0;
  Sense sense = Sense::kMin;
};

struct AuxiliaryOptions {
  int max_iterations = 100;
  int restarts = 3;
  // Restart perturbation, relative to delta.
  double perturbation = 1e-4;
  unsigned long long seed = 20200101ULL;
  double kkt_tol = 1e-9;
  double feas_tol = 1e-12;
  // Re-solve the conic problem at eps_star and compare optimal partitions.
  bool post_check = true;
  double classification_tol = kDefaultClassificationTol;
  SolverOptions solver;
};

enum class AuxiliaryStatus {
  kOk,
  // eps_star coincides with eps_bar: the conditions guaranteeing progress fail here.
  kNoProgress,
};

const char* to_string(AuxiliaryStatus s);

struct AuxiliaryResult {
  AuxiliaryStatus status = AuxiliaryStatus::kOk;
  double eps_star = 0.0;
  PrimalDualTriple witness;
  double kkt_residual = 0.0;
  double constraint_violation = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  // Conic re-solve at eps_star performed by the post-check.
  std::optional<SolveReport> resolved;
  std::optional<OptimalPartition> resolved_partition;
};

// Errors: INVALID_ARGUMENT, SQP_DIVERGED, PARTITION_MISMATCH.
AuxiliaryResult solve_auxiliary(const AuxiliaryProblem& prob, const AuxiliaryOptions& opts = {});

struct AuxiliaryResiduals {
  double optimality = 0.0;
  double violation = 0.0;
};

// Violation is the largest residual over the constraints (balls in squared
// form); optimality is the norm of the Lagrangian gradient with least-squares
// multipliers for the equalities and the nearly active inequalities.
AuxiliaryResiduals residuals(const PrimalDualTriple& candidate, const AuxiliaryProblem& prob);

}  // namespace socpart
