#include "socpart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "soc_kernels.hpp"
#include "socpart/errors.hpp"

namespace socpart {

namespace {

using LD = long double;
using VecL = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;

// Standard-form problem  min c^T x  s.t.  A x = b, x in K.
struct ConicProblem {
  ConeStructure K;
  MatL A;
  VecL b;
  VecL c;
};

struct ConicSolution {
  VecL x, y, s;
  int iterations = 0;
  LD mu = 0;
};

struct BlockScaling {
  MatL W;
  MatL Winv;
  VecL lambda;
  // Smallest eigenvalue and determinant of lambda, free of cancellation.
  LD lambda_min = 0;
  LD lambda_det = 0;
};

LD lambda_min(const VecL& v) {
  if (v.size() == 1) return v(0);
  return v(0) - v.tail(v.size() - 1).norm();
}

// Nesterov-Todd scaling for one block: W s = W^{-1} x = lambda.
BlockScaling nt_scaling(const VecL& x, const VecL& s) {
  const Eigen::Index n = x.size();
  BlockScaling sc;
  if (n == 1) {
    const LD w = std::sqrt(x(0) / s(0));
    sc.W = MatL::Constant(1, 1, w);
    sc.Winv = MatL::Constant(1, 1, 1 / w);
    sc.lambda = VecL::Constant(1, std::sqrt(x(0) * s(0)));
    sc.lambda_min = sc.lambda_det = sc.lambda(0);
    return sc;
  }
  const LD detx = kernels::jordan_det(x);
  const LD dets = kernels::jordan_det(s);
  const VecL xn = x / std::sqrt(detx);
  const VecL sn = s / std::sqrt(dets);
  const LD gamma = std::sqrt((1 + xn.dot(sn)) / 2);
  VecL w(n);
  w(0) = (xn(0) + sn(0)) / (2 * gamma);
  w.tail(n - 1) = (xn.tail(n - 1) - sn.tail(n - 1)) / (2 * gamma);
  const LD eta = std::pow(detx / dets, LD(0.25));
  const VecL w1 = w.tail(n - 1);
  MatL core = MatL::Identity(n - 1, n - 1) + w1 * w1.transpose() / (1 + w(0));
  sc.W.resize(n, n);
  sc.W(0, 0) = w(0);
  sc.W.block(0, 1, 1, n - 1) = w1.transpose();
  sc.W.block(1, 0, n - 1, 1) = w1;
  sc.W.block(1, 1, n - 1, n - 1) = core;
  sc.Winv = sc.W;
  sc.Winv.block(0, 1, 1, n - 1) *= -1;
  sc.Winv.block(1, 0, n - 1, 1) *= -1;
  sc.W *= eta;
  sc.Winv /= eta;
  // lambda = W s in closed form; the normalised lambda has unit determinant.
  const LD root = std::sqrt(std::sqrt(detx * dets));
  VecL lb(n);
  lb(0) = gamma;
  lb.tail(n - 1) = ((gamma + sn(0)) * xn.tail(n - 1) + (gamma + xn(0)) * sn.tail(n - 1)) / (xn(0) + sn(0) + 2 * gamma);
  sc.lambda = root * lb;
  sc.lambda_min = root / (gamma + lb.tail(n - 1).norm());
  sc.lambda_det = root * root;
  return sc;
}

bool strictly_interior(const ConeStructure& K, const VecL& v) {
  for (int i = 0; i < K.num_blocks(); ++i)
    if (!(lambda_min(v.segment(K.offset(i), K.dim(i))) > 0)) return false;
  return true;
}

// Shift v along e so that every block has smallest eigenvalue >= 1.
VecL push_inside(const ConeStructure& K, VecL v) {
  LD worst = std::numeric_limits<LD>::infinity();
  for (int i = 0; i < K.num_blocks(); ++i)
    worst = std::min(worst, lambda_min(v.segment(K.offset(i), K.dim(i))));
  const LD shift = std::max<LD>(0, -worst) + 1;
  for (int i = 0; i < K.num_blocks(); ++i) v(K.offset(i)) += shift;
  return v;
}

class InteriorPointSolver {
 public:
  InteriorPointSolver(const ConicProblem& P, const SolverOptions& o) : P_(P), o_(o) {
    n_ = P.K.total_dim();
    m_ = static_cast<int>(P.A.rows());
    p_ = P.K.num_blocks();
    data_scale_ = 1 + std::max({P.A.cwiseAbs().maxCoeff(), P.b.size() ? P.b.cwiseAbs().maxCoeff() : LD(0),
                                P.c.cwiseAbs().maxCoeff()});
  }

  ConicSolution run() {
    initial_point();
    const LD bnorm = 1 + P_.b.norm();
    const LD cnorm = 1 + P_.c.norm();
    int stalls = 0;
    int centering_left = o_.centering_steps;
    bool centering = false;

    for (int it = 0; it < o_.max_iterations; ++it) {
      const VecL rp = P_.b - P_.A * x_;
      const VecL rd = P_.c - P_.A.transpose() * y_ - s_;
      const LD mu = x_.dot(s_) / p_;
      const LD obj = P_.c.dot(x_);
      const bool feasible = rp.norm() <= LD(1e-14) * bnorm && rd.norm() <= LD(1e-14) * cnorm;
      const bool small_mu = mu <= LD(o_.mu_target) * std::max<LD>(1, std::abs(obj));
      if (feasible && small_mu) {
        if (centering_left <= 0) return finish(it, mu);
        centering = true;
      }

      if (x_.cwiseAbs().maxCoeff() > o_.divergence_bound * data_scale_ ||
          s_.cwiseAbs().maxCoeff() > o_.divergence_bound * data_scale_ ||
          (m_ > 0 && y_.cwiseAbs().maxCoeff() > o_.divergence_bound * data_scale_))
        throw Error(ErrorCode::kInfeasibleOrUnbounded, "interior-point iterates diverge");

      scale();
      factor();

      VecL dx, dy, ds;
      if (centering) {
        direction(rp, rd, centering_rhs(mu), dx, dy, ds);
        --centering_left;
      } else {
        // Predictor.
        VecL rc(n_);
        for (int i = 0; i < p_; ++i) rc.segment(off(i), dim(i)) = -kernels::jordan(lam(i), lam(i));
        VecL dxa, dya, dsa;
        direction(rp, rd, rc, dxa, dya, dsa);
        const LD alpha_a = std::min<LD>(1, std::min(max_step(x_, dxa), max_step(s_, dsa)));
        const LD sigma = std::pow(1 - alpha_a, 3);

        // Corrector with the second-order term.
        for (int i = 0; i < p_; ++i) {
          const VecL a = scalings_[i].Winv * dxa.segment(off(i), dim(i));
          const VecL b = scalings_[i].W * dsa.segment(off(i), dim(i));
          VecL e = VecL::Zero(dim(i));
          e(0) = sigma * mu;
          rc.segment(off(i), dim(i)) = e - kernels::jordan(lam(i), lam(i)) - kernels::jordan(a, b);
        }
        direction(rp, rd, rc, dx, dy, ds);
      }

      LD alpha = std::min<LD>(1, LD(0.99) * std::min(max_step(x_, dx), max_step(s_, ds)));
      alpha = neighbourhood_backtrack(alpha, dx, dy, ds);
      if (!(alpha > LD(1e-12))) {
        if (++stalls >= 5) {
          if (rp.norm() > LD(1e-6) * bnorm || rd.norm() > LD(1e-6) * cnorm)
            throw Error(ErrorCode::kInfeasibleOrUnbounded, "interior-point method stalled while infeasible");
          if (x_.dot(s_) <= o_.tol) return finish(it, mu);
          throw Error(ErrorCode::kNumericalBreakdown, "interior-point method stalled");
        }
        continue;
      }
      stalls = 0;
      x_ += alpha * dx;
      y_ += alpha * dy;
      s_ += alpha * ds;
    }

    const VecL rp = P_.b - P_.A * x_;
    const VecL rd = P_.c - P_.A.transpose() * y_ - s_;
    if (x_.dot(s_) <= o_.tol && rp.norm() <= o_.tol && rd.norm() <= o_.tol)
      return finish(o_.max_iterations, x_.dot(s_) / p_);
    throw Error(ErrorCode::kMaxIterations,
                "interior-point method reached " + std::to_string(o_.max_iterations) + " iterations");
  }

 private:
  int off(int i) const { return P_.K.offset(i); }
  int dim(int i) const { return P_.K.dim(i); }
  const VecL& lam(int i) const { return scalings_[i].lambda; }

  LD max_step(const VecL& u, const VecL& d) const {
    LD a = std::numeric_limits<LD>::infinity();
    for (int i = 0; i < p_; ++i)
      a = std::min(a, kernels::max_step(u.segment(off(i), dim(i)), d.segment(off(i), dim(i))));
    return a;
  }

  void initial_point() {
    if (m_ > 0) {
      Eigen::CompleteOrthogonalDecomposition<MatL> cod(P_.A);
      x_ = cod.solve(P_.b);
      Eigen::CompleteOrthogonalDecomposition<MatL> codt(P_.A.transpose());
      y_ = codt.solve(P_.c);
    } else {
      x_ = VecL::Zero(n_);
      y_ = VecL::Zero(0);
    }
    x_ = push_inside(P_.K, x_);
    s_ = push_inside(P_.K, P_.c - P_.A.transpose() * y_);
  }

  void scale() {
    scalings_.clear();
    for (int i = 0; i < p_; ++i)
      scalings_.push_back(nt_scaling(x_.segment(off(i), dim(i)), s_.segment(off(i), dim(i))));
  }

  // Scaled KKT matrix [I, -(AW)^T; AW, 0] in the unknowns (W^{-1} dx, dy).
  void factor() {
    AW_ = MatL::Zero(m_, n_);
    for (int i = 0; i < p_; ++i) AW_.middleCols(off(i), dim(i)) = P_.A.middleCols(off(i), dim(i)) * scalings_[i].W;
    K_ = MatL::Zero(n_ + m_, n_ + m_);
    K_.topLeftCorner(n_, n_).setIdentity();
    K_.topRightCorner(n_, m_) = -AW_.transpose();
    K_.bottomLeftCorner(m_, n_) = AW_;
    lu_.compute(K_);
  }

  void direction(const VecL& rp, const VecL& rd, const VecL& rc, VecL& dx, VecL& dy, VecL& ds) {
    VecL rhs(n_ + m_);
    for (int i = 0; i < p_; ++i) {
      const VecL q = kernels::arrow_solve(lam(i), rc.segment(off(i), dim(i)), scalings_[i].lambda_det);
      rhs.segment(off(i), dim(i)) = q - scalings_[i].W * rd.segment(off(i), dim(i));
    }
    rhs.tail(m_) = rp;
    VecL sol = lu_.solve(rhs);
    for (int r = 0; r < 2; ++r) sol += lu_.solve(rhs - K_ * sol);
    if (!sol.allFinite()) throw Error(ErrorCode::kNumericalBreakdown, "KKT system is singular");
    dx.resize(n_);
    for (int i = 0; i < p_; ++i) dx.segment(off(i), dim(i)) = scalings_[i].W * sol.segment(off(i), dim(i));
    dy = sol.tail(m_);
    ds = rd - P_.A.transpose() * dy;
  }

  VecL centering_rhs(LD mu) const {
    VecL rc(n_);
    for (int i = 0; i < p_; ++i) {
      VecL e = VecL::Zero(dim(i));
      e(0) = mu;
      rc.segment(off(i), dim(i)) = e - kernels::jordan(lam(i), lam(i));
    }
    return rc;
  }

  bool in_neighbourhood(const VecL& x, const VecL& s) const {
    if (!strictly_interior(P_.K, x) || !strictly_interior(P_.K, s)) return false;
    const LD mu = x.dot(s) / p_;
    if (!(mu > 0)) return false;
    for (int i = 0; i < p_; ++i) {
      const BlockScaling sc = nt_scaling(x.segment(off(i), dim(i)), s.segment(off(i), dim(i)));
      if (!(sc.lambda_min * sc.lambda_min >= LD(o_.neighborhood) * mu)) return false;
    }
    return true;
  }

  LD neighbourhood_backtrack(LD alpha, const VecL& dx, const VecL&, const VecL& ds) const {
    for (int k = 0; k < 60; ++k) {
      if (in_neighbourhood(x_ + alpha * dx, s_ + alpha * ds)) return alpha;
      alpha *= LD(0.8);
    }
    return 0;
  }

  ConicSolution finish(int it, LD mu) const {
    ConicSolution out;
    out.x = x_;
    out.y = y_;
    out.s = s_;
    out.iterations = it;
    out.mu = mu;
    return out;
  }

  const ConicProblem& P_;
  const SolverOptions& o_;
  int n_ = 0, m_ = 0, p_ = 0;
  LD data_scale_ = 1;
  VecL x_, y_, s_;
  std::vector<BlockScaling> scalings_;
  MatL AW_, K_;
  Eigen::PartialPivLU<MatL> lu_;
};

ConicSolution solve_conic(const ConicProblem& P, const SolverOptions& opts) {
  InteriorPointSolver ipm(P, opts);
  return ipm.run();
}

Eigen::VectorXd to_double(const VecL& v) { return v.cast<double>(); }

VecL residual_F(const ConicProblem& P, const VecL& x, const VecL& y, const VecL& s) {
  const int n = P.K.total_dim(), m = static_cast<int>(P.A.rows());
  VecL F(m + 2 * n);
  F.head(m) = P.A * x - P.b;
  F.segment(m, n) = P.A.transpose() * y + s - P.c;
  for (int i = 0; i < P.K.num_blocks(); ++i) {
    const int o = P.K.offset(i), d = P.K.dim(i);
    F.segment(m + n + o, d) = kernels::jordan(VecL(x.segment(o, d)), VecL(s.segment(o, d)));
  }
  return F;
}

// Newton steps on F(x, y, s) = 0 from the interior-point solution. A step is
// kept only if it lowers max|F| and leaves every block inside the cone up to
// roundoff; near-singular Jacobians (degenerate solutions) stop the polish.
void polish(const ConicProblem& P, ConicSolution& sol, int steps) {
  const int n = P.K.total_dim(), m = static_cast<int>(P.A.rows());
  const int N = m + 2 * n;
  for (int k = 0; k < steps; ++k) {
    const VecL F = residual_F(P, sol.x, sol.y, sol.s);
    const LD f0 = F.cwiseAbs().maxCoeff();
    if (f0 == 0) return;
    MatL J = MatL::Zero(N, N);
    J.block(0, 0, m, n) = P.A;
    J.block(m, n, n, m) = P.A.transpose();
    J.block(m, n + m, n, n).setIdentity();
    for (int i = 0; i < P.K.num_blocks(); ++i) {
      const int o = P.K.offset(i), d = P.K.dim(i);
      J.block(m + n + o, o, d, d) = kernels::arrow(VecL(sol.s.segment(o, d)));
      J.block(m + n + o, n + m + o, d, d) = kernels::arrow(VecL(sol.x.segment(o, d)));
    }
    Eigen::JacobiSVD<MatL> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(N - 1) <= LD(1e-10) * sv(0)) return;
    const VecL dz = -svd.solve(F);
    const VecL x = sol.x + dz.head(n);
    const VecL y = sol.y + dz.segment(n, m);
    const VecL s = sol.s + dz.tail(n);
    for (int i = 0; i < P.K.num_blocks(); ++i) {
      const int o = P.K.offset(i), d = P.K.dim(i);
      const LD tol = LD(1e-15) * (1 + x.segment(o, d).norm() + s.segment(o, d).norm());
      if (lambda_min(x.segment(o, d)) < -tol || lambda_min(s.segment(o, d)) < -tol) return;
    }
    if (!(residual_F(P, x, y, s).cwiseAbs().maxCoeff() < f0)) return;
    sol.x = x;
    sol.y = y;
    sol.s = s;
    sol.mu = x.dot(s) / P.K.num_blocks();
  }
}

// Phase I: max t s.t. A x = b, x - t e in K, written in standard form with
// x = z + (t' - T) e, 0 <= t' <= T + 1 and sum of z_1 bounded by M.
// Returns (t, x).
std::pair<double, Eigen::VectorXd> phase_one(const ConeStructure& K, const Eigen::MatrixXd& A,
                                             const Eigen::VectorXd& b, const SolverOptions& opts) {
  const int n = K.total_dim();
  const int m = static_cast<int>(A.rows());
  const int p = K.num_blocks();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < p; ++i) e(K.offset(i)) = 1;

  Eigen::VectorXd xls = Eigen::VectorXd::Zero(n);
  if (m > 0) xls = A.completeOrthogonalDecomposition().solve(b);
  const double T = 2 * (1 + xls.norm());
  const double M = 10 * (p * (T + 1) + xls.norm() * std::sqrt(double(p)) + 1) + 10 * (p * T);

  // Variables: z (n), t' (1), q (1), r (1); cones K x R+ x R+ x R+.
  std::vector<int> dims = K.dims();
  dims.push_back(1);
  dims.push_back(1);
  dims.push_back(1);
  ConicProblem P{ConeStructure(dims), MatL::Zero(m + 2, n + 3), VecL::Zero(m + 2), VecL::Zero(n + 3)};
  const Eigen::VectorXd Ae = m > 0 ? Eigen::VectorXd(A * e) : Eigen::VectorXd();
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) P.A(r, j) = A(r, j);
    P.A(r, n) = Ae(r);
    P.b(r) = b(r) + T * Ae(r);
  }
  P.A(m, n) = 1;
  P.A(m, n + 1) = 1;
  P.b(m) = T + 1;
  for (int i = 0; i < p; ++i) P.A(m + 1, K.offset(i)) = 1;
  P.A(m + 1, n + 2) = 1;
  P.b(m + 1) = M;
  P.c(n) = -1;

  SolverOptions o = opts;
  o.mu_target = 1e-14;
  o.centering_steps = 0;
  const ConicSolution sol = solve_conic(P, o);
  const double t = static_cast<double>(sol.x(n)) - T;
  Eigen::VectorXd x = sol.x.head(n).cast<double>() + t * e;
  return {t, x};
}

}  // namespace

PrimalDualTriple make_triple(const ParametricInstance& inst, double eps, ConeVector x, Eigen::VectorXd y,
                             ConeVector s) {
  PrimalDualTriple t;
  t.eps = eps;
  const Eigen::VectorXd q = inst.objective(eps);
  t.gap = x.values().dot(s.values());
  t.primal_residual = (inst.A * x.values() - inst.b).norm();
  t.dual_residual = (inst.A.transpose() * y + s.values() - q).norm();
  t.objective = q.dot(x.values());
  t.x = std::move(x);
  t.y = std::move(y);
  t.s = std::move(s);
  return t;
}

SolveReport solve(const ParametricInstance& inst, double eps, const SolverOptions& opts) {
  if (!(opts.tol > 0)) throw Error(ErrorCode::kInvalidArgument, "solver tolerance must be positive");
  if (!std::isfinite(eps)) throw Error(ErrorCode::kInvalidArgument, "eps must be finite");
  ConicProblem P{inst.structure, inst.A.cast<LD>(), inst.b.cast<LD>(), inst.objective(eps).cast<LD>()};
  // Build the objective in extended precision.
  P.c = inst.c.cast<LD>() + static_cast<LD>(eps) * inst.cbar.cast<LD>();
  ConicSolution sol = solve_conic(P, opts);
  polish(P, sol, opts.polish_steps);

  SolveReport rep;
  rep.triple = make_triple(inst, eps, ConeVector(inst.structure, to_double(sol.x)), to_double(sol.y),
                           ConeVector(inst.structure, to_double(sol.s)));
  rep.iterations = sol.iterations;
  rep.mu = static_cast<double>(sol.mu);
  rep.sigma_min_F = sigma_min(jacobian_F(inst, rep.triple));
  return rep;
}

SolveReport solve(const ParametricInstance& inst, double eps, double tol) {
  SolverOptions o;
  o.tol = tol;
  return solve(inst, eps, o);
}

Eigen::MatrixXd jacobian_F(const Eigen::MatrixXd& A, const PrimalDualTriple& t) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (t.x.values().size() != n || t.s.values().size() != n || t.y.size() != m)
    throw Error(ErrorCode::kStructureMismatch, "triple dimensions do not match A");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n + m, 2 * n + m);
  J.block(0, 0, m, n) = A;
  J.block(m, n, n, m) = A.transpose();
  J.block(m, n + m, n, n).setIdentity();
  J.block(m + n, 0, n, n) = arrow_matrix(t.s);
  J.block(m + n, n + m, n, n) = arrow_matrix(t.x);
  return J;
}

Eigen::MatrixXd jacobian_F(const ParametricInstance& inst, const PrimalDualTriple& t) {
  return jacobian_F(inst.A, t);
}

double sigma_min(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues().minCoeff();
}

InteriorPointCheck check_interior_point(const ParametricInstance& inst, double eps, const SolverOptions& opts) {
  constexpr double kMargin = 1e-8;
  InteriorPointCheck out;
  const ConeStructure& K = inst.structure;
  const int n = K.total_dim();
  const Eigen::VectorXd q = inst.objective(eps);

  try {
    auto [t, x] = phase_one(K, inst.A, inst.b, opts);
    out.primal_margin = t;
    out.primal_interior = t > kMargin;
    out.x = x;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasibleOrUnbounded) throw;
  }

  // Dual slacks live in q + range(A^T) = { s : Z^T s = Z^T q } with Z a null-space basis of A.
  Eigen::MatrixXd Z;
  if (inst.m() == 0) {
    Z = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(inst.A);
    Eigen::MatrixXd N = lu.kernel();
    if (lu.rank() < n) Z = N.householderQr().householderQ() * Eigen::MatrixXd::Identity(n, N.cols());
  }
  Eigen::VectorXd s;
  if (Z.cols() == 0) {
    s = ConeVector::Identity(K).values();
    out.dual_margin = 1.0;
    out.dual_interior = true;
  } else {
    try {
      auto [t, sv] = phase_one(K, Z.transpose(), Z.transpose() * q, opts);
      out.dual_margin = t;
      out.dual_interior = t > kMargin;
      s = sv;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleOrUnbounded) throw;
    }
  }
  if (s.size() == n) {
    out.s = s;
    if (inst.m() > 0) out.y = inst.A.transpose().completeOrthogonalDecomposition().solve(q - s);
  }
  out.holds = out.primal_interior && out.dual_interior;
  return out;
}

}  // namespace socpart
