#pragma once

// Jordan-algebraic primitives for Cartesian products of second-order cones
//   L^{n_1}_+ x ... x L^{n_p}_+,   L^n_+ = { x : x_1 >= ||x_{2:n}|| }.
// Blocks of size one are half-lines x_1 >= 0.

#include <Eigen/Dense>
#include <vector>

namespace socpart {

class ConeStructure {
 public:
  ConeStructure() = default;
  explicit ConeStructure(std::vector<int> dims);

  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int total_dim() const { return total_; }
  int dim(int block) const { return dims_.at(block); }
  int offset(int block) const { return offsets_.at(block); }
  const std::vector<int>& dims() const { return dims_; }

  bool operator==(const ConeStructure& other) const { return dims_ == other.dims_; }
  bool operator!=(const ConeStructure& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// A vector in R^{n̄} viewed blockwise according to a ConeStructure.
class ConeVector {
 public:
  ConeVector() = default;
  ConeVector(ConeStructure structure, Eigen::VectorXd values);

  static ConeVector Zero(const ConeStructure& structure);
  // The Jordan identity e: every block is (1, 0, ..., 0).
  static ConeVector Identity(const ConeStructure& structure);

  const ConeStructure& structure() const { return structure_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  Eigen::VectorXd::ConstSegmentReturnType block(int i) const {
    return values_.segment(structure_.offset(i), structure_.dim(i));
  }
  Eigen::VectorXd::SegmentReturnType block(int i) {
    return values_.segment(structure_.offset(i), structure_.dim(i));
  }

 private:
  ConeStructure structure_;
  Eigen::VectorXd values_;
};

// L(x) = [x_1, x_{2:n}^T; x_{2:n}, x_1 I].
Eigen::MatrixXd arrow_matrix(const Eigen::Ref<const Eigen::VectorXd>& x_block);
// Block-diagonal diag(L(x^1), ..., L(x^p)).
Eigen::MatrixXd arrow_matrix(const ConeVector& x);

Eigen::VectorXd jordan_product(const Eigen::Ref<const Eigen::VectorXd>& x_block,
                               const Eigen::Ref<const Eigen::VectorXd>& s_block);
ConeVector jordan_product(const ConeVector& x, const ConeVector& s);

// Eigen-decomposition of L(x^i). Column order of `eigenvectors` matches
// `eigenvalues`: lambda_plus, lambda_minus, then x_1 repeated n - 2 times.
struct SpectralFrame {
  int block = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  // Columns of `eigenvectors` whose eigenvalue exceeds the positivity threshold.
  Eigen::MatrixXd positive_eigenvectors;
};

SpectralFrame spectral_decomposition(const Eigen::Ref<const Eigen::VectorXd>& x_block,
                                     int block_index = 0, double positive_tol = 0.0);

enum class BlockClass { kInterior, kBoundaryNonzero, kZero, kOutside };

const char* to_string(BlockClass c);

// Thresholds are tol * max(1, ||x||).
BlockClass classify_block(const Eigen::Ref<const Eigen::VectorXd>& x_block, double tol);

// R x = (x_1, -x_{2:n}).
Eigen::VectorXd reflection_apply(const Eigen::Ref<const Eigen::VectorXd>& x_block);

// x_1 - ||x_{2:n}||, the smallest eigenvalue of L(x) for n >= 2 (x_1 itself for n = 1).
double cone_margin(const Eigen::Ref<const Eigen::VectorXd>& x_block);

}  // namespace socpart
