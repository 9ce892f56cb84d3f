#include "socpart/auxnlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "soc_kernels.hpp"
#include "socpart/errors.hpp"

namespace socpart {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// The problem is posed in the scaled displacement w = (v - v*) / delta,
// v = (x, y, s, eps), so that the balls become unit balls and every quantity
// is O(1) regardless of delta.
class ScaledProblem {
 public:
  ScaledProblem(const AuxiliaryProblem& prob)
      : inst_(*prob.instance), K_(inst_.structure), delta_(prob.delta), sign_(prob.sense == Sense::kMin ? 1 : -1) {
    n_ = inst_.n();
    m_ = inst_.m();
    N_ = 2 * n_ + m_ + 1;
    E_ = m_ + 2 * n_;
    eps_bar_ = prob.anchor.eps;
    xs_ = prob.anchor.x.values();
    ys_ = prob.anchor.y;
    ss_ = prob.anchor.s.values();
    rp_ = (inst_.A * xs_ - inst_.b) / delta_;
    rd_ = (inst_.A.transpose() * ys_ + ss_ - inst_.objective(eps_bar_)) / delta_;
    comp0_ = VectorXd(n_);
    for (int i = 0; i < K_.num_blocks(); ++i)
      comp0_.segment(K_.offset(i), K_.dim(i)) =
          kernels::jordan(xs_.segment(K_.offset(i), K_.dim(i)), ss_.segment(K_.offset(i), K_.dim(i))) / delta_;
    if (inst_.domain) {
      if (std::isfinite(inst_.domain->lo)) bounds_.push_back({-1.0, (inst_.domain->lo - eps_bar_) / delta_});
      if (std::isfinite(inst_.domain->hi)) bounds_.push_back({1.0, (inst_.domain->hi - eps_bar_) / delta_});
    }
  }

  int N() const { return N_; }
  int E() const { return E_; }
  int G() const { return 2 + static_cast<int>(bounds_.size()); }
  int ix() const { return 0; }
  int iy() const { return n_; }
  int is() const { return n_ + m_; }
  int ie() const { return 2 * n_ + m_; }

  double f(const VectorXd& w) const { return sign_ * w(ie()); }
  VectorXd grad_f() const {
    VectorXd g = VectorXd::Zero(N_);
    g(ie()) = sign_;
    return g;
  }

  VectorXd h(const VectorXd& w) const {
    VectorXd r(E_);
    const auto wx = w.segment(ix(), n_);
    const auto wy = w.segment(iy(), m_);
    const auto ws = w.segment(is(), n_);
    r.head(m_) = inst_.A * wx + rp_;
    r.segment(m_, n_) = inst_.A.transpose() * wy + ws - inst_.cbar * w(ie()) + rd_;
    for (int i = 0; i < K_.num_blocks(); ++i) {
      const int o = K_.offset(i), d = K_.dim(i);
      const VectorXd a = wx.segment(o, d), b = ws.segment(o, d);
      r.segment(m_ + n_ + o, d) = comp0_.segment(o, d) + kernels::jordan(xs_.segment(o, d), b) +
                                  kernels::jordan(a, ss_.segment(o, d)) + delta_ * kernels::jordan(a, b);
    }
    return r;
  }

  MatrixXd Jh(const VectorXd& w) const {
    MatrixXd J = MatrixXd::Zero(E_, N_);
    J.block(0, ix(), m_, n_) = inst_.A;
    J.block(m_, iy(), n_, m_) = inst_.A.transpose();
    J.block(m_, is(), n_, n_).setIdentity();
    J.block(m_, ie(), n_, 1) = -inst_.cbar;
    const VectorXd x = xs_ + delta_ * w.segment(ix(), n_);
    const VectorXd s = ss_ + delta_ * w.segment(is(), n_);
    for (int i = 0; i < K_.num_blocks(); ++i) {
      const int o = K_.offset(i), d = K_.dim(i);
      J.block(m_ + n_ + o, ix() + o, d, d) = kernels::arrow(s.segment(o, d));
      J.block(m_ + n_ + o, is() + o, d, d) = kernels::arrow(x.segment(o, d));
    }
    return J;
  }

  VectorXd g(const VectorXd& w) const {
    VectorXd r(G());
    r(0) = w.segment(ix(), n_).squaredNorm() - 1;
    r(1) = w.segment(is(), n_).squaredNorm() - 1;
    for (size_t k = 0; k < bounds_.size(); ++k)
      r(2 + k) = bounds_[k].first * (w(ie()) - bounds_[k].second);
    return r;
  }

  MatrixXd Jg(const VectorXd& w) const {
    MatrixXd J = MatrixXd::Zero(G(), N_);
    J.block(0, ix(), 1, n_) = 2 * w.segment(ix(), n_).transpose();
    J.block(1, is(), 1, n_) = 2 * w.segment(is(), n_).transpose();
    for (size_t k = 0; k < bounds_.size(); ++k) J(2 + k, ie()) = bounds_[k].first;
    return J;
  }

  // Hessian of f + lam^T h + mu^T g.
  MatrixXd hessian(const VectorXd& lam, const VectorXd& mu) const {
    MatrixXd H = MatrixXd::Zero(N_, N_);
    H.block(ix(), ix(), n_, n_).diagonal().setConstant(2 * mu(0));
    H.block(is(), is(), n_, n_).diagonal().setConstant(2 * mu(1));
    const VectorXd lc = lam.segment(m_ + n_, n_);
    for (int i = 0; i < K_.num_blocks(); ++i) {
      const int o = K_.offset(i), d = K_.dim(i);
      const MatrixXd L = delta_ * kernels::arrow(lc.segment(o, d));
      H.block(ix() + o, is() + o, d, d) += L;
      H.block(is() + o, ix() + o, d, d) += L;
    }
    return H;
  }

  PrimalDualTriple unscale(const VectorXd& w) const {
    const double eps = eps_bar_ + delta_ * w(ie());
    return make_triple(inst_, eps, ConeVector(K_, xs_ + delta_ * w.segment(ix(), n_)),
                       ys_ + delta_ * w.segment(iy(), m_), ConeVector(K_, ss_ + delta_ * w.segment(is(), n_)));
  }

  double eps_offset(const VectorXd& w) const { return w(ie()); }
  double delta() const { return delta_; }
  double sign() const { return sign_; }

 private:
  const ParametricInstance& inst_;
  const ConeStructure& K_;
  double delta_;
  double sign_;
  int n_ = 0, m_ = 0, N_ = 0, E_ = 0;
  double eps_bar_ = 0;
  VectorXd xs_, ys_, ss_, rp_, rd_, comp0_;
  // (orientation, scaled bound): constraint orientation * (w_eps - bound) <= 0.
  std::vector<std::pair<double, double>> bounds_;
};

struct QpSolution {
  VectorXd d, lam, mu;
  bool ok = false;
};

constexpr double kReg = 1e-11;

// Convex QP  min grad^T d + 1/2 d^T H d  s.t.  h + Jh d = 0,  g + Jg d <= 0,
// solved by enumerating the active sets of the (at most four) inequalities.
QpSolution solve_qp(const MatrixXd& H, const VectorXd& grad, const MatrixXd& Jh, const VectorXd& h,
                    const MatrixXd& Jg, const VectorXd& g) {
  const int N = static_cast<int>(H.rows());
  const int E = static_cast<int>(Jh.rows());
  const int q = static_cast<int>(Jg.rows());
  QpSolution best;
  double best_obj = kInf;
  for (int mask = 0; mask < (1 << q); ++mask) {
    std::vector<int> S;
    for (int j = 0; j < q; ++j)
      if (mask & (1 << j)) S.push_back(j);
    const int k = static_cast<int>(S.size());
    MatrixXd K = MatrixXd::Zero(N + E + k, N + E + k);
    VectorXd rhs(N + E + k);
    K.topLeftCorner(N, N) = H;
    K.block(0, N, N, E) = Jh.transpose();
    K.block(N, 0, E, N) = Jh;
    K.block(N, N, E, E).diagonal().setConstant(-kReg);
    rhs.head(N) = -grad;
    rhs.segment(N, E) = -h;
    for (int a = 0; a < k; ++a) {
      K.block(0, N + E + a, N, 1) = Jg.row(S[a]).transpose();
      K.block(N + E + a, 0, 1, N) = Jg.row(S[a]);
      K(N + E + a, N + E + a) = -kReg;
      rhs(N + E + a) = -g(S[a]);
    }
    // The unregularised matrix is used when it is invertible. Otherwise a
    // regularised factorisation, refined against the unregularised matrix
    // to remove the bias for consistent systems.
    MatrixXd K0 = K;
    K0.bottomRightCorner(E + k, E + k).setZero();
    Eigen::FullPivLU<MatrixXd> lu0(K0);
    VectorXd sol;
    if (lu0.isInvertible()) {
      sol = lu0.solve(rhs);
      for (int r = 0; r < 2; ++r) sol += lu0.solve(rhs - K0 * sol);
    } else {
      Eigen::FullPivLU<MatrixXd> lu(K);
      sol = lu.solve(rhs);
      for (int r = 0; r < 3; ++r) sol += lu.solve(rhs - K0 * sol);
    }
    if (!sol.allFinite()) continue;
    const VectorXd d = sol.head(N);
    const double scale = 1 + d.cwiseAbs().maxCoeff();
    bool valid = true;
    for (int a = 0; a < k && valid; ++a) {
      if (std::abs(g(S[a]) + Jg.row(S[a]).dot(d)) > 1e-8 * scale) valid = false;
      if (sol(N + E + a) < -1e-10) valid = false;
    }
    for (int j = 0; j < q && valid; ++j)
      if (!(mask & (1 << j)) && g(j) + Jg.row(j).dot(d) > 1e-9 * scale) valid = false;
    if ((Jh * d + h).cwiseAbs().maxCoeff() > 1e-6 * scale) valid = false;
    if (!valid) continue;
    const double obj = grad.dot(d) + 0.5 * d.dot(H * d);
    if (obj < best_obj) {
      best_obj = obj;
      best.ok = true;
      best.d = d;
      best.lam = sol.segment(N, E);
      best.mu = VectorXd::Zero(q);
      for (int a = 0; a < k; ++a) best.mu(S[a]) = std::max(0.0, sol(N + E + a));
    }
  }
  return best;
}

// Smallest eigenvalue of H restricted to the null space of J (+inf if trivial).
double reduced_min_eig(const MatrixXd& H, const MatrixXd& J) {
  Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, smax)) ++r;
  const int N = static_cast<int>(H.rows());
  if (r >= N) return kInf;
  const MatrixXd Z = svd.matrixV().rightCols(N - r);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Z.transpose() * H * Z);
  return es.eigenvalues().minCoeff();
}

struct SqpOutcome {
  bool converged = false;
  VectorXd w;
  VectorXd lam, mu;
  double kkt = kInf;
  double viol = kInf;
  int iterations = 0;
};

double violation(const ScaledProblem& P, const VectorXd& w) {
  const VectorXd hv = P.h(w);
  const VectorXd gv = P.g(w);
  double v = hv.size() ? hv.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < gv.size(); ++j) v = std::max(v, gv(j));
  return v;
}

double kkt_residual(const ScaledProblem& P, const VectorXd& w, const VectorXd& lam, const VectorXd& mu) {
  const VectorXd gl = P.grad_f() + P.Jh(w).transpose() * lam + P.Jg(w).transpose() * mu;
  const VectorXd gv = P.g(w);
  double r = gl.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < mu.size(); ++j) r = std::max({r, std::abs(mu(j) * gv(j)), -mu(j)});

  // Least-squares multipliers on the nearly active set; damped SQP
  // multipliers lag behind when the constraint Jacobian is ill-conditioned.
  std::vector<int> act;
  for (Eigen::Index j = 0; j < gv.size(); ++j)
    if (gv(j) >= -1e-6) act.push_back(static_cast<int>(j));
  const MatrixXd Jh = P.Jh(w), Jg = P.Jg(w);
  MatrixXd C(P.N(), P.E() + static_cast<Eigen::Index>(act.size()));
  C.leftCols(P.E()) = Jh.transpose();
  for (size_t a = 0; a < act.size(); ++a) C.col(P.E() + a) = Jg.row(act[a]).transpose();
  const VectorXd m = C.completeOrthogonalDecomposition().solve(-P.grad_f());
  double r_ls = (P.grad_f() + C * m).cwiseAbs().maxCoeff();
  for (size_t a = 0; a < act.size(); ++a)
    r_ls = std::max({r_ls, -m(P.E() + a), std::abs(m(P.E() + a) * gv(act[a]))});
  return std::min(r, r_ls);
}

SqpOutcome run_sqp(const ScaledProblem& P, VectorXd w, const AuxiliaryOptions& opts) {
  SqpOutcome out;
  VectorXd lam = VectorXd::Zero(P.E());
  // Ball multipliers start at 1/2, giving unit curvature on the x and s blocks.
  VectorXd mu = VectorXd::Zero(P.G());
  mu(0) = mu(1) = 0.5;
  double rho = 10.0;
  int stalled = 0;
  // Feasibility is judged in the original units: equality rows scale back by
  // delta and the ball rows by delta^2.
  const double feas_tol = std::max(opts.feas_tol, opts.feas_tol / P.delta());
  // Looser stationarity accepted once steps stall at roundoff level.
  constexpr double kStallKkt = 1e-6;

  auto merit = [&](const VectorXd& v) {
    const VectorXd gv = P.g(v);
    return P.f(v) + rho * (P.h(v).lpNorm<1>() + gv.cwiseMax(0.0).sum());
  };

  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    const VectorXd hv = P.h(w);
    const VectorXd gv = P.g(w);
    const MatrixXd Jh = P.Jh(w);
    const MatrixXd Jg = P.Jg(w);
    MatrixXd H = P.hessian(lam, mu);
    const double lmin = reduced_min_eig(H, Jh);
    // Curvature floor on null(Jh); the balls are unit balls in w.
    constexpr double kFloor = 1.0;
    if (lmin < kFloor) H.diagonal().array() += kFloor - lmin;

    // Row equilibration; complementarity rows of blocks near zero are tiny.
    VectorXd D = Jh.rowwise().norm();
    const double dmax = std::max(D.maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < D.size(); ++i) D(i) = 1.0 / std::max(D(i), 1e-12 * dmax);
    const MatrixXd Jhs = D.asDiagonal() * Jh;
    const VectorXd hvs = D.cwiseProduct(hv);
    QpSolution qp = solve_qp(H, P.grad_f(), Jhs, hvs, Jg, gv);
    if (!qp.ok) {
      // Linearisation inconsistent: drop the inequalities and restore feasibility.
      qp = solve_qp(H, VectorXd::Zero(P.N()), Jhs, hvs, MatrixXd::Zero(0, P.N()), VectorXd::Zero(0));
      if (!qp.ok) return out;
      qp.mu = mu;
    }
    qp.lam = D.cwiseProduct(qp.lam);
    const VectorXd& d = qp.d;
    rho = std::max(rho, 2 * std::max(qp.lam.size() ? qp.lam.cwiseAbs().maxCoeff() : 0.0,
                                     qp.mu.size() ? qp.mu.cwiseAbs().maxCoeff() : 0.0));

    const double phi0 = merit(w);
    const double infeas = hv.lpNorm<1>() + gv.cwiseMax(0.0).sum();
    const double dphi = P.grad_f().dot(d) - rho * infeas;
    double alpha = 1.0;
    VectorXd wn = w + d;
    bool accepted = merit(wn) <= phi0 + 1e-4 * std::min(dphi, 0.0);
    if (!accepted) {
      // Second-order correction for the curvature of the equality constraints.
      // Active inequalities (ball curvature) are corrected along with h.
      std::vector<int> act;
      for (int j = 0; j < P.G(); ++j)
        if (qp.mu(j) > 0 || gv(j) + Jg.row(j).dot(d) > -1e-12) act.push_back(j);
      const int na = static_cast<int>(act.size());
      MatrixXd Jc(P.E() + na, P.N());
      VectorXd rc(P.E() + na);
      Jc.topRows(P.E()) = Jhs;
      rc.head(P.E()) = D.cwiseProduct(P.h(wn));
      const VectorXd gn = P.g(wn);
      for (int a = 0; a < na; ++a) {
        Jc.row(P.E() + a) = Jg.row(act[a]);
        rc(P.E() + a) = gn(act[a]);
      }
      const VectorXd corr = -Jc.completeOrthogonalDecomposition().solve(rc);
      const VectorXd wc = wn + corr;
      if (merit(wc) <= phi0 + 1e-4 * std::min(dphi, 0.0)) {
        wn = wc;
        accepted = true;
      }
    }
    while (!accepted && alpha > 1e-12) {
      alpha *= 0.5;
      wn = w + alpha * d;
      accepted = merit(wn) <= phi0 + 1e-4 * alpha * std::min(dphi, 0.0);
    }
    if (!accepted) {
      // Line search exhausted: accept if already at roundoff-level feasibility.
      out.w = w;
      out.lam = lam;
      out.mu = mu;
      out.viol = violation(P, w);
      out.kkt = kkt_residual(P, w, lam, mu);
      out.converged = out.viol <= feas_tol && out.kkt <= kStallKkt;
      return out;
    }
    w = wn;
    lam += alpha * (qp.lam - lam);
    mu += alpha * (qp.mu - mu);

    out.viol = violation(P, w);
    out.kkt = kkt_residual(P, w, lam, mu);
    const double step = alpha * d.cwiseAbs().maxCoeff();
    if (out.viol <= feas_tol && out.kkt <= opts.kkt_tol) {
      out.converged = true;
      break;
    }
    // Steps at roundoff level: the iterate cannot be improved further.
    stalled = step <= 1e-13 ? stalled + 1 : 0;
    if (stalled >= 3) {
      out.converged = out.viol <= feas_tol && out.kkt <= kStallKkt;
      break;
    }
  }
  out.w = w;
  out.lam = lam;
  out.mu = mu;
  return out;
}

}  // namespace

const char* to_string(AuxiliaryStatus s) {
  switch (s) {
    case AuxiliaryStatus::kOk: return "OK";
    case AuxiliaryStatus::kNoProgress: return "NO_PROGRESS";
  }
  return "?";
}

AuxiliaryResiduals residuals(const PrimalDualTriple& cand, const AuxiliaryProblem& prob) {
  if (prob.instance == nullptr) throw Error(ErrorCode::kInvalidArgument, "auxiliary problem has no instance");
  const ParametricInstance& inst = *prob.instance;
  const int n = inst.n(), m = inst.m();
  if (cand.x.values().size() != n || cand.s.values().size() != n || cand.y.size() != m)
    throw Error(ErrorCode::kStructureMismatch, "candidate dimensions do not match the instance");
  const VectorXd& x = cand.x.values();
  const VectorXd& s = cand.s.values();
  const VectorXd& xs = prob.anchor.x.values();
  const VectorXd& ss = prob.anchor.s.values();
  const double d2 = prob.delta * prob.delta;

  const VectorXd rp = inst.A * x - inst.b;
  const VectorXd rd = inst.A.transpose() * cand.y + s - inst.objective(cand.eps);
  const VectorXd comp = jordan_product(cand.x, cand.s).values();
  std::vector<double> g{(x - xs).squaredNorm() - d2, (s - ss).squaredNorm() - d2};
  std::vector<VectorXd> gg;
  const int N = 2 * n + m + 1;
  VectorXd g0 = VectorXd::Zero(N), g1 = VectorXd::Zero(N);
  g0.head(n) = 2 * (x - xs);
  g1.segment(n + m, n) = 2 * (s - ss);
  gg.push_back(g0);
  gg.push_back(g1);
  if (inst.domain) {
    if (std::isfinite(inst.domain->lo)) {
      g.push_back(inst.domain->lo - cand.eps);
      VectorXd e = VectorXd::Zero(N);
      e(N - 1) = -1;
      gg.push_back(e);
    }
    if (std::isfinite(inst.domain->hi)) {
      g.push_back(cand.eps - inst.domain->hi);
      VectorXd e = VectorXd::Zero(N);
      e(N - 1) = 1;
      gg.push_back(e);
    }
  }

  AuxiliaryResiduals r;
  r.violation = std::max({m ? rp.cwiseAbs().maxCoeff() : 0.0, rd.cwiseAbs().maxCoeff(), comp.cwiseAbs().maxCoeff()});
  for (double v : g) r.violation = std::max(r.violation, v);

  // Jacobian of the equalities in (x, y, s, eps).
  MatrixXd J = MatrixXd::Zero(m + 2 * n, N);
  J.block(0, 0, m, n) = inst.A;
  J.block(m, n, n, m) = inst.A.transpose();
  J.block(m, n + m, n, n).setIdentity();
  J.block(m, N - 1, n, 1) = -inst.cbar;
  J.block(m + n, 0, n, n) = arrow_matrix(cand.s);
  J.block(m + n, n + m, n, n) = arrow_matrix(cand.x);
  std::vector<int> active;
  const double act_tol = 1e-8 * std::max(d2, 1e-300);
  for (size_t j = 0; j < g.size(); ++j) {
    const double scale = j < 2 ? std::max(d2, 1e-300) : 1.0;
    if (g[j] >= -1e-6 * scale || (j < 2 && g[j] >= -act_tol)) active.push_back(static_cast<int>(j));
  }
  MatrixXd C(N, J.rows() + static_cast<Eigen::Index>(active.size()));
  C.leftCols(J.rows()) = J.transpose();
  for (size_t a = 0; a < active.size(); ++a) C.col(J.rows() + a) = gg[active[a]];
  VectorXd grad = VectorXd::Zero(N);
  grad(N - 1) = prob.sense == Sense::kMin ? 1.0 : -1.0;
  const VectorXd mult = C.completeOrthogonalDecomposition().solve(-grad);
  double opt = (grad + C * mult).norm();
  for (size_t a = 0; a < active.size(); ++a) opt = std::max(opt, -mult(J.rows() + a));
  r.optimality = opt;
  return r;
}

AuxiliaryResult solve_auxiliary(const AuxiliaryProblem& prob, const AuxiliaryOptions& opts) {
  if (prob.instance == nullptr) throw Error(ErrorCode::kInvalidArgument, "auxiliary problem has no instance");
  if (!(prob.delta >= 0) || !std::isfinite(prob.delta))
    throw Error(ErrorCode::kInvalidArgument, "delta must be a finite nonnegative number");

  AuxiliaryResult res;
  if (prob.delta == 0) {
    // The balls pin (x, s) to the anchor and dual feasibility then pins eps.
    res.status = AuxiliaryStatus::kNoProgress;
    res.eps_star = prob.anchor.eps;
    res.witness = prob.anchor;
    const auto r = residuals(prob.anchor, prob);
    res.kkt_residual = r.optimality;
    res.constraint_violation = r.violation;
    return res;
  }

  const ScaledProblem P(prob);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SqpOutcome best;
  bool found = false;
  for (int attempt = 0; attempt <= opts.restarts && !found; ++attempt) {
    VectorXd w0 = VectorXd::Zero(P.N());
    if (attempt > 0)
      for (Eigen::Index i = 0; i < w0.size(); ++i) w0(i) = opts.perturbation * normal(rng);
    SqpOutcome o = run_sqp(P, w0, opts);
    // A solution moving against the requested direction is not acceptable.
    if (o.converged && P.sign() * P.eps_offset(o.w) <= 1e-9) {
      best = o;
      found = true;
      res.restarts_used = attempt;
    }
  }
  if (!found) throw Error(ErrorCode::kSqpDiverged, "SQP failed to converge on the auxiliary problem");

  res.witness = P.unscale(best.w);
  res.eps_star = res.witness.eps;
  res.iterations = best.iterations;
  const auto r = residuals(res.witness, prob);
  res.kkt_residual = r.optimality;
  res.constraint_violation = r.violation;
  if (std::abs(P.eps_offset(best.w)) <= 1e-9) {
    res.status = AuxiliaryStatus::kNoProgress;
    res.eps_star = prob.anchor.eps;
  }

  if (opts.post_check && res.status == AuxiliaryStatus::kOk) {
    const OptimalPartition anchor_part = classify(prob.anchor, opts.classification_tol);
    SolveReport rep = solve(*prob.instance, res.eps_star, opts.solver);
    OptimalPartition part = classify(rep.triple, opts.classification_tol);
    res.resolved = std::move(rep);
    if (part != anchor_part)
      throw Error(ErrorCode::kPartitionMismatch, "partition at eps* = " + std::to_string(res.eps_star) + " is " +
                                                     part.to_string() + ", anchor partition is " +
                                                     anchor_part.to_string());
    res.resolved_partition = std::move(part);
  }
  return res;
}

}  // namespace socpart
