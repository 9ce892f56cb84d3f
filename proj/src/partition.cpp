#include "socpart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "socpart/errors.hpp"

namespace socpart {

namespace {

// True when q sits within a factor 10 of threshold t on either side.
bool near(double q, double t) { return std::abs(q) > t / 10 && std::abs(q) < 10 * t; }

bool low_confidence_block(const Eigen::VectorXd& v, BlockClass cls, double tol) {
  const double nrm = v.norm();
  const double t = tol * std::max(1.0, nrm);
  const double margin = cone_margin(v);
  switch (cls) {
    case BlockClass::kZero: return near(nrm, t);
    case BlockClass::kInterior: return near(margin, t);
    case BlockClass::kBoundaryNonzero: return near(margin, t) || near(v(0), t);
    case BlockClass::kOutside: return true;
  }
  return true;
}

int matrix_rank(const Eigen::MatrixXd& M, double rank_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * smax) ++r;
  return r;
}

void append_cols(Eigen::MatrixXd& M, const Eigen::MatrixXd& cols) {
  Eigen::MatrixXd out(std::max(M.rows(), cols.rows()), M.cols() + cols.cols());
  out << M, cols;
  M = std::move(out);
}

std::string set_str(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + "}";
}

Eigen::VectorXd project_to_boundary(const Eigen::VectorXd& v) {
  if (v.size() == 1) return Eigen::VectorXd::Zero(1);
  const double t = v.tail(v.size() - 1).norm();
  const double a = 0.5 * (v(0) + t);
  Eigen::VectorXd out(v.size());
  out(0) = a;
  if (t > 0) out.tail(v.size() - 1) = v.tail(v.size() - 1) * (a / t);
  else out.tail(v.size() - 1).setZero();
  return out;
}

}  // namespace

const char* to_string(PartitionSet s) {
  switch (s) {
    case PartitionSet::kB: return "B";
    case PartitionSet::kN: return "N";
    case PartitionSet::kR: return "R";
    case PartitionSet::kT1: return "T1";
    case PartitionSet::kT2: return "T2";
    case PartitionSet::kT3: return "T3";
  }
  return "?";
}

int OptimalPartition::num_blocks() const {
  return static_cast<int>(B.size() + N.size() + R.size() + T1.size() + T2.size() + T3.size());
}

const std::vector<int>& OptimalPartition::members(PartitionSet s) const {
  switch (s) {
    case PartitionSet::kB: return B;
    case PartitionSet::kN: return N;
    case PartitionSet::kR: return R;
    case PartitionSet::kT1: return T1;
    case PartitionSet::kT2: return T2;
    case PartitionSet::kT3: return T3;
  }
  return B;
}

PartitionSet OptimalPartition::set_of(int block) const {
  for (PartitionSet s : {PartitionSet::kB, PartitionSet::kN, PartitionSet::kR, PartitionSet::kT1,
                         PartitionSet::kT2, PartitionSet::kT3}) {
    const auto& m = members(s);
    if (std::find(m.begin(), m.end(), block) != m.end()) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "block " + std::to_string(block) + " is not in the partition");
}

bool OptimalPartition::same_sets(const OptimalPartition& o) const {
  return B == o.B && N == o.N && R == o.R && T1 == o.T1 && T2 == o.T2 && T3 == o.T3;
}

std::string OptimalPartition::to_string() const {
  return "(" + set_str(B) + "," + set_str(N) + "," + set_str(R) + ",(" + set_str(T1) + "," + set_str(T2) + "," +
         set_str(T3) + "))";
}

OptimalPartition classify(const PrimalDualTriple& t, double tol) {
  if (!(tol >= 0)) throw Error(ErrorCode::kInvalidArgument, "classification tolerance must be nonnegative");
  if (t.x.structure() != t.s.structure())
    throw Error(ErrorCode::kStructureMismatch, "x and s have different cone structures");
  OptimalPartition P;
  P.tol = tol;
  const int p = t.x.structure().num_blocks();
  for (int i = 0; i < p; ++i) {
    const Eigen::VectorXd xi = t.x.block(i);
    const Eigen::VectorXd si = t.s.block(i);
    const BlockClass cx = classify_block(xi, tol);
    const BlockClass cs = classify_block(si, tol);
    using BC = BlockClass;
    if (cx == BC::kInterior && cs == BC::kZero) P.B.push_back(i);
    else if (cs == BC::kInterior && cx == BC::kZero) P.N.push_back(i);
    else if (cx == BC::kBoundaryNonzero && cs == BC::kBoundaryNonzero) P.R.push_back(i);
    else if (cx == BC::kZero && cs == BC::kZero) P.T1.push_back(i);
    else if (cs == BC::kZero && cx == BC::kBoundaryNonzero) P.T2.push_back(i);
    else if (cx == BC::kZero && cs == BC::kBoundaryNonzero) P.T3.push_back(i);
    else
      throw Error(ErrorCode::kInconsistentBlock, "block " + std::to_string(i + 1) + " has x " + to_string(cx) +
                                                     " and s " + to_string(cs));
    if (low_confidence_block(xi, cx, tol) || low_confidence_block(si, cs, tol)) P.low_confidence.push_back(i);
  }
  if (P.num_blocks() != p) throw Error(ErrorCode::kInconsistentBlock, "partition does not cover every block");
  return P;
}

bool is_strictly_complementary(const OptimalPartition& P) {
  return P.T1.empty() && P.T2.empty() && P.T3.empty();
}

Eigen::MatrixXd primal_nondegeneracy_matrix(const ParametricInstance& inst, const PrimalDualTriple& t,
                                            const OptimalPartition& P) {
  Eigen::MatrixXd M(inst.m(), 0);
  std::vector<int> bnd = P.R;
  bnd.insert(bnd.end(), P.T2.begin(), P.T2.end());
  std::sort(bnd.begin(), bnd.end());
  for (int i : bnd) {
    const Eigen::VectorXd xi = t.x.block(i);
    const double thr = P.tol * std::max(1.0, xi.norm());
    const SpectralFrame f = spectral_decomposition(xi, i, thr);
    append_cols(M, inst.block_columns(i) * f.positive_eigenvectors);
  }
  for (int i : P.B) append_cols(M, inst.block_columns(i));
  return M;
}

Eigen::MatrixXd dual_nondegeneracy_matrix(const ParametricInstance& inst, const PrimalDualTriple& t,
                                          const OptimalPartition& P) {
  Eigen::MatrixXd M(inst.m(), 0);
  std::vector<int> bnd = P.R;
  bnd.insert(bnd.end(), P.T3.begin(), P.T3.end());
  std::sort(bnd.begin(), bnd.end());
  for (int i : bnd) append_cols(M, inst.block_columns(i) * reflection_apply(t.s.block(i)));
  std::vector<int> full = P.B;
  full.insert(full.end(), P.T1.begin(), P.T1.end());
  full.insert(full.end(), P.T2.begin(), P.T2.end());
  std::sort(full.begin(), full.end());
  for (int i : full) append_cols(M, inst.block_columns(i));
  return M;
}

bool primal_nondegenerate(const ParametricInstance& inst, const PrimalDualTriple& t, const OptimalPartition& P,
                          double rank_tol) {
  const Eigen::MatrixXd M = primal_nondegeneracy_matrix(inst, t, P);
  if (inst.m() == 0) return true;
  return matrix_rank(M, rank_tol) == inst.m();
}

bool dual_nondegenerate(const ParametricInstance& inst, const PrimalDualTriple& t, const OptimalPartition& P,
                        double rank_tol) {
  const Eigen::MatrixXd M = dual_nondegeneracy_matrix(inst, t, P);
  if (M.cols() == 0) return true;
  return matrix_rank(M, rank_tol) == M.cols();
}

DeltaRadii delta_radius(const PrimalDualTriple& t, const OptimalPartition& P) {
  if (!is_strictly_complementary(P))
    throw Error(ErrorCode::kNotStrictlyComplementary, "delta radius needs a strictly complementary partition");
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double h = std::sqrt(2.0) / 2;
  DeltaRadii d{inf, inf, inf, inf};
  for (int i : P.B) d.delta_B = std::min(d.delta_B, h * cone_margin(t.x.block(i)));
  for (int i : P.N) d.delta_N = std::min(d.delta_N, h * cone_margin(t.s.block(i)));
  for (int i : P.R) d.delta_R = std::min({d.delta_R, t.x.block(i)(0), t.s.block(i)(0)});
  d.delta = std::min({d.delta_B, d.delta_N, d.delta_R});
  return d;
}

PrimalDualTriple round_to_partition(const ParametricInstance& inst, const PrimalDualTriple& t,
                                    const OptimalPartition& P) {
  ConeVector x = t.x;
  ConeVector s = t.s;
  for (int i : P.B) s.block(i).setZero();
  for (int i : P.N) x.block(i).setZero();
  for (int i : P.T1) {
    x.block(i).setZero();
    s.block(i).setZero();
  }
  for (int i : P.T2) {
    s.block(i).setZero();
    x.block(i) = project_to_boundary(x.block(i));
  }
  for (int i : P.T3) {
    x.block(i).setZero();
    s.block(i) = project_to_boundary(s.block(i));
  }
  for (int i : P.R) {
    x.block(i) = project_to_boundary(x.block(i));
    s.block(i) = project_to_boundary(s.block(i));
  }
  return make_triple(inst, t.eps, std::move(x), t.y, std::move(s));
}

}  // namespace socpart
