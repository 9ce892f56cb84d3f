#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "socpart/instance.hpp"
#include "socpart/partition.hpp"
#include "socpart/solver.hpp"

namespace socpart {

// Layout of the nonlinear dual reformulation for a fixed partition. A point
// is the stacked vector (w; z; u; v):
//   w in R^m, z over the blocks of R u N u T3, u over every block,
//   v over R u T3 (one scalar per block).
// Blocks inside each group are in increasing index order.
struct ReformulationDN {
  ParametricInstance instance;
  OptimalPartition partition;
  std::vector<int> z_blocks;  // R u N u T3
  std::vector<int> v_blocks;  // R u T3

  int m() const { return instance.m(); }
  int dim() const { return dim_; }

  int w_offset() const { return 0; }
  // -1 when the block carries no z (resp. v).
  int z_offset(int block) const { return z_off_[block]; }
  int u_offset(int block) const { return u_off_[block]; }
  int v_index(int block) const { return v_idx_[block]; }

  // Open cone condition: z_1 > 0 on R u T3, z interior on N.
  bool in_open_cone(const Eigen::VectorXd& point) const;

 private:
  friend ReformulationDN build_reformulation(const ParametricInstance&, const OptimalPartition&);
  int dim_ = 0;
  std::vector<int> z_off_, u_off_, v_idx_;
};

ReformulationDN build_reformulation(const ParametricInstance& inst, const OptimalPartition& partition);

// Row groups, in order:
//   -sum_i A_i u^i - b
//   -u^i - 2 v_i R z^i   (i in R)
//   -u^i                 (i in N)
//   -u^i - 2 v_i R z^i   (i in T3)
//   A_i^T w - c^i - eps cbar^i         (i in B u T1 u T2)
//   A_i^T w + z^i - c^i - eps cbar^i   (i in R u N u T3)
//   (z^i)^T R z^i        (i in R u T3)
// Raises LAYOUT_MISMATCH when the point has the wrong length.
Eigen::VectorXd eval_G(const Eigen::VectorXd& point, double eps, const ReformulationDN& reform);
Eigen::MatrixXd jacobian_G(const Eigen::VectorXd& point, const ReformulationDN& reform);

// (w; z; u; v) = (y; s restricted to R u N u T3; -x; x_1 / (2 s_1)).
Eigen::VectorXd point_from_triple(const PrimalDualTriple& triple, const ReformulationDN& reform);
// Inverse map: x = -u, y = w, s = z on R u N u T3 and 0 elsewhere.
PrimalDualTriple triple_from_point(const Eigen::VectorXd& point, double eps, const ReformulationDN& reform);

struct NewtonOptions {
  double newton_tol = 1e-12;
  int max_iterations = 50;
  // sigma_min / sigma_max below this raises SINGULAR_JACOBIAN.
  double singular_tol = 1e-12;
};

struct NewtonResult {
  Eigen::VectorXd point;
  double residual = 0.0;
  int iterations = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

// Rounds the triple to the partition, maps it into the layout and runs Newton
// on G(., eps_bar) = 0. Raises SINGULAR_JACOBIAN or DIVERGED.
NewtonResult newton_correct(const PrimalDualTriple& raw, const ReformulationDN& reform, double eps_bar,
                            const NewtonOptions& opts = {});
// Same, starting from a point already in the layout.
NewtonResult newton_correct(const Eigen::VectorXd& start, const ReformulationDN& reform, double eps_bar,
                            const NewtonOptions& opts = {});

// One quantity tested for vanishing derivatives.
struct SeriesQuantity {
  PartitionSet set = PartitionSet::kT1;  // T1: norm of u^(k); T2: (u^T R u)^(k); T3: v^(k)
  int block = 0;
  std::vector<double> values;  // values[k - 1] is the order-k derivative
};

struct DerivativeSeries {
  Eigen::VectorXd base;
  // derivatives[k - 1] is chi^(k)(eps_bar).
  std::vector<Eigen::VectorXd> derivatives;
  std::vector<SeriesQuantity> quantities;
  // Relative residual of the linear solve at each order.
  std::vector<double> residuals;

  int order() const { return static_cast<int>(derivatives.size()); }
};

// Taylor coefficients a_k are computed with one factorization of grad G;
// derivatives are k! a_k. Raises SINGULAR_JACOBIAN.
DerivativeSeries derivative_series(const Eigen::VectorXd& point, const ReformulationDN& reform, double eps_bar,
                                   int K, double singular_tol = 1e-12);

enum class TransitionVerdict { kNonlinearityMember, kTransitionPoint, kInapplicable };
const char* to_string(TransitionVerdict v);

// Tolerance for order k: base * growth(k), growth(k) = 10^((k - 1) / 2).
double derivative_growth(int k);

struct ClassifyOptions {
  int K = 10;
  double deriv_tol = 1e-8;
  double classification_tol = kDefaultClassificationTol;
  double rank_tol = kDefaultRankTol;
  SolverOptions solver;
  NewtonOptions newton;
};

struct TransitionViolation {
  PartitionSet set = PartitionSet::kT1;
  int block = 0;
  int order = 0;
  double value = 0.0;
  double tolerance = 0.0;
};

struct TransitionReport {
  double eps = 0.0;
  TransitionVerdict verdict = TransitionVerdict::kInapplicable;
  OptimalPartition partition;
  bool primal_nondegenerate = false;
  bool dual_nondegenerate = false;
  std::optional<NewtonResult> corrected;
  std::optional<DerivativeSeries> series;
  std::optional<TransitionViolation> violation;
  // Orders checked; membership is only established up to this order.
  int orders_checked = 0;
  std::string note;
};

TransitionReport classify_point(const ParametricInstance& inst, double eps_bar, const ClassifyOptions& opts = {});

}  // namespace socpart
