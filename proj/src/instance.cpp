#include "socpart/instance.hpp"

#include <string>

#include "socpart/errors.hpp"

namespace socpart {

namespace {

bool all_finite(const Eigen::MatrixXd& M) { return M.allFinite(); }

}  // namespace

void ParametricInstance::validate() const {
  const int nbar = structure.total_dim();
  if (nbar == 0) throw Error(ErrorCode::kInvalidInstance, "instance has no cone blocks");
  if (A.cols() != nbar)
    throw Error(ErrorCode::kDimensionMismatch,
                "A has " + std::to_string(A.cols()) + " columns, cone dimension is " + std::to_string(nbar));
  if (b.size() != A.rows())
    throw Error(ErrorCode::kDimensionMismatch, "b length does not match the row count of A");
  if (c.size() != nbar) throw Error(ErrorCode::kDimensionMismatch, "c length does not match cone dimension");
  if (cbar.size() != nbar) throw Error(ErrorCode::kDimensionMismatch, "cbar length does not match cone dimension");
  if (!all_finite(A) || !all_finite(b) || !all_finite(c) || !all_finite(cbar))
    throw Error(ErrorCode::kInvalidInstance, "instance data contains NaN or Inf");
  if (domain && !(domain->lo <= domain->hi))
    throw Error(ErrorCode::kInvalidInstance, "domain bounds are empty");

  if (A.rows() == 0) return;
  if (A.rows() > A.cols()) throw Error(ErrorCode::kInvalidInstance, "A has more rows than columns");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0) || sv(sv.size() - 1) <= 1e-10 * smax)
    throw Error(ErrorCode::kInvalidInstance, "A does not have full row rank");
}

}  // namespace socpart
