#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>

#include "socpart/cones.hpp"

namespace socpart {

// Closed interval approximating the interior of the parameter domain E.
// Either side may be infinite.
struct DomainBounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double eps) const { return eps >= lo && eps <= hi; }
};

// min (c + eps cbar)^T x  s.t.  A x = b, x in the cone product,
// together with its dual  max b^T y  s.t.  A^T y + s = c + eps cbar, s in the cone product.
struct ParametricInstance {
  std::string name;
  ConeStructure structure;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd cbar;
  std::optional<DomainBounds> domain;

  int m() const { return static_cast<int>(A.rows()); }
  int n() const { return structure.total_dim(); }
  Eigen::VectorXd objective(double eps) const { return c + eps * cbar; }
  // Columns of A belonging to cone block i.
  Eigen::MatrixXd block_columns(int i) const {
    return A.middleCols(structure.offset(i), structure.dim(i));
  }

  // Throws DIMENSION_MISMATCH / INVALID_INSTANCE on inconsistent data, NaN/Inf
  // entries, or a row-rank deficient A (singular values below 1e-10 sigma_max).
  void validate() const;
};

}  // namespace socpart
