#include "socpart/cones.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "soc_kernels.hpp"
#include "socpart/errors.hpp"

namespace socpart {

ConeStructure::ConeStructure(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::kInvalidInstance, "cone structure needs at least one block");
  offsets_.reserve(dims_.size());
  for (int n : dims_) {
    if (n < 1) throw Error(ErrorCode::kInvalidInstance, "cone block dimensions must be >= 1");
    offsets_.push_back(total_);
    total_ += n;
  }
}

ConeVector::ConeVector(ConeStructure structure, Eigen::VectorXd values)
    : structure_(std::move(structure)), values_(std::move(values)) {
  if (values_.size() != structure_.total_dim())
    throw Error(ErrorCode::kStructureMismatch, "vector length does not match cone structure");
}

ConeVector ConeVector::Zero(const ConeStructure& structure) {
  return ConeVector(structure, Eigen::VectorXd::Zero(structure.total_dim()));
}

ConeVector ConeVector::Identity(const ConeStructure& structure) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(structure.total_dim());
  for (int i = 0; i < structure.num_blocks(); ++i) e(structure.offset(i)) = 1.0;
  return ConeVector(structure, std::move(e));
}

Eigen::MatrixXd arrow_matrix(const Eigen::Ref<const Eigen::VectorXd>& x_block) {
  return kernels::arrow(x_block);
}

Eigen::MatrixXd arrow_matrix(const ConeVector& x) {
  const auto& st = x.structure();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(st.total_dim(), st.total_dim());
  for (int i = 0; i < st.num_blocks(); ++i)
    L.block(st.offset(i), st.offset(i), st.dim(i), st.dim(i)) = kernels::arrow(x.block(i));
  return L;
}

Eigen::VectorXd jordan_product(const Eigen::Ref<const Eigen::VectorXd>& x_block,
                               const Eigen::Ref<const Eigen::VectorXd>& s_block) {
  if (x_block.size() != s_block.size())
    throw Error(ErrorCode::kStructureMismatch, "block sizes differ in jordan_product");
  return kernels::jordan(x_block, s_block);
}

ConeVector jordan_product(const ConeVector& x, const ConeVector& s) {
  if (x.structure() != s.structure())
    throw Error(ErrorCode::kStructureMismatch, "operands of jordan_product have different cone structures");
  ConeVector r = ConeVector::Zero(x.structure());
  for (int i = 0; i < x.structure().num_blocks(); ++i) r.block(i) = kernels::jordan(x.block(i), s.block(i));
  return r;
}

SpectralFrame spectral_decomposition(const Eigen::Ref<const Eigen::VectorXd>& x_block,
                                     int block_index, double positive_tol) {
  const Eigen::Index n = x_block.size();
  SpectralFrame f;
  f.block = block_index;
  f.eigenvalues.resize(n);
  f.eigenvectors = Eigen::MatrixXd::Zero(n, n);

  if (n == 1) {
    f.eigenvalues(0) = x_block(0);
    f.eigenvectors(0, 0) = 1.0;
  } else {
    const Eigen::VectorXd tail = x_block.tail(n - 1);
    const double t = tail.norm();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n - 1);
    if (t > 0) {
      u = tail / t;
    } else {
      u(0) = 1.0;
    }
    const double h = std::sqrt(0.5);
    f.eigenvalues(0) = x_block(0) + t;
    f.eigenvalues(1) = x_block(0) - t;
    f.eigenvectors(0, 0) = h;
    f.eigenvectors.col(0).tail(n - 1) = h * u;
    f.eigenvectors(0, 1) = h;
    f.eigenvectors.col(1).tail(n - 1) = -h * u;

    // Orthonormal completion of u inside R^{n-1}.
    std::vector<Eigen::VectorXd> basis{u};
    Eigen::Index col = 2;
    for (Eigen::Index k = 0; k < n - 1 && col < n; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(n - 1, k);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= b.dot(v) * b;
      const double nv = v.norm();
      if (nv < 1e-8) continue;
      v /= nv;
      basis.push_back(v);
      f.eigenvalues(col) = x_block(0);
      f.eigenvectors.col(col).tail(n - 1) = v;
      ++col;
    }
  }

  int npos = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (f.eigenvalues(k) > positive_tol) ++npos;
  f.positive_eigenvectors.resize(n, npos);
  int c = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (f.eigenvalues(k) > positive_tol) f.positive_eigenvectors.col(c++) = f.eigenvectors.col(k);
  return f;
}

const char* to_string(BlockClass c) {
  switch (c) {
    case BlockClass::kInterior: return "INTERIOR";
    case BlockClass::kBoundaryNonzero: return "BOUNDARY_NONZERO";
    case BlockClass::kZero: return "ZERO";
    case BlockClass::kOutside: return "OUTSIDE";
  }
  return "?";
}

BlockClass classify_block(const Eigen::Ref<const Eigen::VectorXd>& x_block, double tol) {
  const double nrm = x_block.norm();
  const double t = tol * std::max(1.0, nrm);
  if (nrm <= t) return BlockClass::kZero;
  const double margin = cone_margin(x_block);
  if (margin > t) return BlockClass::kInterior;
  if (std::abs(margin) <= t && x_block(0) > t) return BlockClass::kBoundaryNonzero;
  return BlockClass::kOutside;
}

Eigen::VectorXd reflection_apply(const Eigen::Ref<const Eigen::VectorXd>& x_block) {
  Eigen::VectorXd r = -x_block;
  r(0) = x_block(0);
  return r;
}

double cone_margin(const Eigen::Ref<const Eigen::VectorXd>& x_block) {
  return x_block(0) - kernels::tail_norm(x_block);
}

}  // namespace socpart
