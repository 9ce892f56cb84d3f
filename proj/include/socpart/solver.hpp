#pragma once

#include <Eigen/Dense>

#include "socpart/cones.hpp"
#include "socpart/instance.hpp"

namespace socpart {

struct PrimalDualTriple {
  double eps = 0.0;
  ConeVector x;
  Eigen::VectorXd y;
  ConeVector s;
  double gap = 0.0;              // x^T s
  double primal_residual = 0.0;  // ||A x - b||
  double dual_residual = 0.0;    // ||A^T y + s - c - eps cbar||
  double objective = 0.0;        // (c + eps cbar)^T x
};

// Fills gap, residuals and objective from (x, y, s).
PrimalDualTriple make_triple(const ParametricInstance& inst, double eps, ConeVector x,
                             Eigen::VectorXd y, ConeVector s);

struct SolverOptions {
  double tol = 1e-8;
  int max_iterations = 200;
  // The barrier parameter is driven to mu_target * max(1, |objective|). A
  // block that vanishes on both sides shrinks like sqrt(mu), so this has to
  // sit far below the square of the classification tolerance.
  double mu_target = 1e-17;
  // Pure centering steps taken at the final mu.
  int centering_steps = 2;
  // Wide-neighbourhood parameter: every scaled block keeps
  // lambda_min^2 >= neighborhood * mu.
  double neighborhood = 1e-3;
  // Norm at which iterates count as diverging.
  double divergence_bound = 1e12;
  // Newton steps on the optimality conditions after the interior-point phase.
  int polish_steps = 3;
};

struct SolveReport {
  PrimalDualTriple triple;
  int iterations = 0;
  double mu = 0.0;
  // Smallest singular value of the KKT Jacobian at `triple`.
  double sigma_min_F = 0.0;
};

SolveReport solve(const ParametricInstance& inst, double eps, const SolverOptions& opts = {});
SolveReport solve(const ParametricInstance& inst, double eps, double tol);

// [A 0 0; 0 A^T I; L(s) 0 L(x)], of side 2 n + m.
Eigen::MatrixXd jacobian_F(const ParametricInstance& inst, const PrimalDualTriple& triple);
Eigen::MatrixXd jacobian_F(const Eigen::MatrixXd& A, const PrimalDualTriple& triple);

double sigma_min(const Eigen::MatrixXd& M);

struct InteriorPointCheck {
  bool holds = false;
  bool primal_interior = false;
  bool dual_interior = false;
  // Largest t found with x - t e in the cone (primal) and s - t e in the cone (dual).
  double primal_margin = 0.0;
  double dual_margin = 0.0;
  // Witness points; meaningful only for the side that holds.
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd s;
};

// Phase-I test for strictly feasible primal and dual points at eps.
InteriorPointCheck check_interior_point(const ParametricInstance& inst, double eps,
                                        const SolverOptions& opts = {});

}  // namespace socpart
