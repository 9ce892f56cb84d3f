#include "socpart/transition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "socpart/errors.hpp"

namespace socpart {

namespace {

std::vector<int> merged(std::initializer_list<const std::vector<int>*> sets) {
  std::vector<int> out;
  for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
  std::sort(out.begin(), out.end());
  return out;
}

void check_layout(const Eigen::VectorXd& point, const ReformulationDN& r) {
  if (point.size() != r.dim())
    throw Error(ErrorCode::kLayoutMismatch, "point has length " + std::to_string(point.size()) +
                                                ", reformulation expects " + std::to_string(r.dim()));
}

Eigen::VectorXd reflect(const Eigen::VectorXd& z) {
  Eigen::VectorXd out = -z;
  out(0) = z(0);
  return out;
}

// Row offsets of the groups in G.
struct RowLayout {
  std::vector<int> urow;  // per block, -1 for B u T1 u T2
  std::vector<int> frow;  // feasibility rows, every block
  std::vector<int> crow;  // cone rows, -1 off R u T3
};

RowLayout row_layout(const ReformulationDN& r) {
  const auto& S = r.instance.structure;
  const auto& P = r.partition;
  const int p = S.num_blocks();
  RowLayout L{std::vector<int>(p, -1), std::vector<int>(p, -1), std::vector<int>(p, -1)};
  int row = r.m();
  for (const auto* set : {&P.R, &P.N, &P.T3})
    for (int i : *set) {
      L.urow[i] = row;
      row += S.dim(i);
    }
  for (const auto* set : {&P.B, &P.T1, &P.T2})
    for (int i : *set) {
      L.frow[i] = row;
      row += S.dim(i);
    }
  for (const auto* set : {&P.R, &P.N, &P.T3})
    for (int i : *set) {
      L.frow[i] = row;
      row += S.dim(i);
    }
  for (const auto* set : {&P.R, &P.T3})
    for (int i : *set) L.crow[i] = row++;
  return L;
}

struct Factorization {
  Eigen::MatrixXd J;
  Eigen::FullPivLU<Eigen::MatrixXd> lu;
  double sigma_min = 0.0;
  double sigma_max = 0.0;

  Factorization(Eigen::MatrixXd M, double singular_tol) : J(std::move(M)) {
    if (J.rows() == 0) return;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    sigma_max = sv(0);
    sigma_min = sv(sv.size() - 1);
    if (!(sigma_min > singular_tol * sigma_max)) {
      std::ostringstream os;
      os << "grad G is numerically singular (sigma_min " << sigma_min << ", sigma_max " << sigma_max << ")";
      throw Error(ErrorCode::kSingularJacobian, os.str());
    }
    lu.compute(J);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    if (J.rows() == 0) return rhs;
    Eigen::VectorXd x = lu.solve(rhs);
    for (int it = 0; it < 2; ++it) x += lu.solve(rhs - J * x);
    return x;
  }
};

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

bool ReformulationDN::in_open_cone(const Eigen::VectorXd& point) const {
  check_layout(point, *this);
  const auto& S = instance.structure;
  for (int i : z_blocks) {
    const Eigen::VectorXd z = point.segment(z_offset(i), S.dim(i));
    if (partition.set_of(i) == PartitionSet::kN) {
      if (!(cone_margin(z) > 0)) return false;
    } else if (!(z(0) > 0)) {
      return false;
    }
  }
  return true;
}

ReformulationDN build_reformulation(const ParametricInstance& inst, const OptimalPartition& partition) {
  const auto& S = inst.structure;
  const int p = S.num_blocks();
  if (partition.num_blocks() != p)
    throw Error(ErrorCode::kPartitionMismatch, "partition covers " + std::to_string(partition.num_blocks()) +
                                                   " blocks, instance has " + std::to_string(p));
  ReformulationDN r;
  r.instance = inst;
  r.partition = partition;
  r.z_blocks = merged({&partition.R, &partition.N, &partition.T3});
  r.v_blocks = merged({&partition.R, &partition.T3});
  r.z_off_.assign(p, -1);
  r.u_off_.assign(p, -1);
  r.v_idx_.assign(p, -1);
  int off = inst.m();
  for (int i : r.z_blocks) {
    r.z_off_[i] = off;
    off += S.dim(i);
  }
  for (int i = 0; i < p; ++i) {
    r.u_off_[i] = off;
    off += S.dim(i);
  }
  for (int i : r.v_blocks) r.v_idx_[i] = off++;
  r.dim_ = off;
  return r;
}

Eigen::VectorXd eval_G(const Eigen::VectorXd& pt, double eps, const ReformulationDN& r) {
  check_layout(pt, r);
  const auto& inst = r.instance;
  const auto& S = inst.structure;
  const RowLayout L = row_layout(r);
  const Eigen::VectorXd w = pt.head(r.m());
  const Eigen::VectorXd q = inst.objective(eps);
  Eigen::VectorXd G = Eigen::VectorXd::Zero(r.dim());
  G.head(r.m()) = -inst.b;
  for (int i = 0; i < S.num_blocks(); ++i) {
    const int n = S.dim(i);
    const Eigen::VectorXd u = pt.segment(r.u_offset(i), n);
    G.head(r.m()) -= inst.block_columns(i) * u;
    Eigen::VectorXd f = inst.block_columns(i).transpose() * w - q.segment(S.offset(i), n);
    if (r.z_offset(i) >= 0) {
      const Eigen::VectorXd z = pt.segment(r.z_offset(i), n);
      f += z;
      Eigen::VectorXd urow = -u;
      if (r.v_index(i) >= 0) {
        urow -= 2.0 * pt(r.v_index(i)) * reflect(z);
        G(L.crow[i]) = z.dot(reflect(z));
      }
      G.segment(L.urow[i], n) = urow;
    }
    G.segment(L.frow[i], n) = f;
  }
  return G;
}

Eigen::MatrixXd jacobian_G(const Eigen::VectorXd& pt, const ReformulationDN& r) {
  check_layout(pt, r);
  const auto& inst = r.instance;
  const auto& S = inst.structure;
  const RowLayout L = row_layout(r);
  const int m = r.m();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(r.dim(), r.dim());
  for (int i = 0; i < S.num_blocks(); ++i) {
    const int n = S.dim(i);
    const Eigen::MatrixXd Ai = inst.block_columns(i);
    J.block(0, r.u_offset(i), m, n) = -Ai;
    J.block(L.frow[i], 0, n, m) = Ai.transpose();
    if (r.z_offset(i) < 0) continue;
    const int zo = r.z_offset(i);
    J.block(L.frow[i], zo, n, n).setIdentity();
    J.block(L.urow[i], r.u_offset(i), n, n) = -Eigen::MatrixXd::Identity(n, n);
    if (r.v_index(i) >= 0) {
      const Eigen::VectorXd z = pt.segment(zo, n);
      const Eigen::VectorXd Rz = reflect(z);
      const double v = pt(r.v_index(i));
      Eigen::MatrixXd Rm = -Eigen::MatrixXd::Identity(n, n);
      Rm(0, 0) = 1.0;
      J.block(L.urow[i], zo, n, n) = -2.0 * v * Rm;
      J.block(L.urow[i], r.v_index(i), n, 1) = -2.0 * Rz;
      J.block(L.crow[i], zo, 1, n) = 2.0 * Rz.transpose();
    }
  }
  return J;
}

Eigen::VectorXd point_from_triple(const PrimalDualTriple& t, const ReformulationDN& r) {
  const auto& S = r.instance.structure;
  if (t.y.size() != r.m() || t.x.structure() != S || t.s.structure() != S)
    throw Error(ErrorCode::kLayoutMismatch, "triple does not match the instance of the reformulation");
  Eigen::VectorXd pt = Eigen::VectorXd::Zero(r.dim());
  pt.head(r.m()) = t.y;
  for (int i : r.z_blocks) pt.segment(r.z_offset(i), S.dim(i)) = t.s.block(i);
  for (int i = 0; i < S.num_blocks(); ++i) pt.segment(r.u_offset(i), S.dim(i)) = -t.x.block(i);
  for (int i : r.v_blocks) {
    const double s1 = t.s.block(i)(0);
    pt(r.v_index(i)) = s1 != 0.0 ? 0.5 * t.x.block(i)(0) / s1 : 0.0;
  }
  return pt;
}

PrimalDualTriple triple_from_point(const Eigen::VectorXd& pt, double eps, const ReformulationDN& r) {
  check_layout(pt, r);
  const auto& S = r.instance.structure;
  ConeVector x = ConeVector::Zero(S);
  ConeVector s = ConeVector::Zero(S);
  for (int i = 0; i < S.num_blocks(); ++i) x.block(i) = -pt.segment(r.u_offset(i), S.dim(i));
  for (int i : r.z_blocks) s.block(i) = pt.segment(r.z_offset(i), S.dim(i));
  return make_triple(r.instance, eps, std::move(x), pt.head(r.m()), std::move(s));
}

NewtonResult newton_correct(const PrimalDualTriple& raw, const ReformulationDN& reform, double eps_bar,
                            const NewtonOptions& opts) {
  const PrimalDualTriple rounded = round_to_partition(reform.instance, raw, reform.partition);
  return newton_correct(point_from_triple(rounded, reform), reform, eps_bar, opts);
}

NewtonResult newton_correct(const Eigen::VectorXd& start, const ReformulationDN& reform, double eps_bar,
                            const NewtonOptions& opts) {
  check_layout(start, reform);
  NewtonResult res;
  res.point = start;
  Eigen::VectorXd G = eval_G(res.point, eps_bar, reform);
  res.residual = G.norm();
  while (res.residual > opts.newton_tol) {
    if (res.iterations >= opts.max_iterations)
      throw Error(ErrorCode::kDiverged, "Newton did not reach ||G|| <= " + std::to_string(opts.newton_tol) +
                                            " in " + std::to_string(opts.max_iterations) + " iterations");
    const Factorization F(jacobian_G(res.point, reform), opts.singular_tol);
    const Eigen::VectorXd next = res.point - F.solve(G);
    const Eigen::VectorXd Gn = eval_G(next, eps_bar, reform);
    ++res.iterations;
    if (!std::isfinite(Gn.norm()))
      throw Error(ErrorCode::kDiverged, "Newton iterate is not finite");
    // Roundoff floor: further steps no longer reduce the residual.
    if (Gn.norm() >= res.residual && res.iterations > 1) break;
    res.point = next;
    G = Gn;
    res.residual = G.norm();
  }
  const Factorization F(jacobian_G(res.point, reform), opts.singular_tol);
  res.sigma_min = F.sigma_min;
  res.sigma_max = F.sigma_max;
  if (res.residual > opts.newton_tol)
    throw Error(ErrorCode::kDiverged, "Newton stalled at ||G|| = " + std::to_string(res.residual));
  if (!reform.in_open_cone(res.point))
    throw Error(ErrorCode::kDiverged, "corrected z left the open cone");
  return res;
}

DerivativeSeries derivative_series(const Eigen::VectorXd& point, const ReformulationDN& r, double eps_bar, int K,
                                   double singular_tol) {
  (void)eps_bar;
  check_layout(point, r);
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "derivative order K must be at least 1");
  const auto& S = r.instance.structure;
  const RowLayout L = row_layout(r);
  const Factorization F(jacobian_G(point, r), singular_tol);

  // a[k] are Taylor coefficients of chi around eps_bar.
  std::vector<Eigen::VectorXd> a{point};
  DerivativeSeries out;
  out.base = point;
  for (int k = 1; k <= K; ++k) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r.dim());
    if (k == 1) {
      for (int i = 0; i < S.num_blocks(); ++i)
        rhs.segment(L.frow[i], S.dim(i)) = r.instance.cbar.segment(S.offset(i), S.dim(i));
    } else {
      for (int i : r.v_blocks) {
        const int n = S.dim(i);
        Eigen::VectorXd su = Eigen::VectorXd::Zero(n);
        double sc = 0.0;
        for (int j = 1; j < k; ++j) {
          const Eigen::VectorXd zj = a[j].segment(r.z_offset(i), n);
          const Eigen::VectorXd zkj = a[k - j].segment(r.z_offset(i), n);
          su += a[j](r.v_index(i)) * reflect(zkj);
          sc += zj.dot(reflect(zkj));
        }
        rhs.segment(L.urow[i], n) = 2.0 * su;
        rhs(L.crow[i]) = -sc;
      }
    }
    Eigen::VectorXd ak = F.solve(rhs);
    const double rn = std::max(rhs.norm(), 1e-300);
    out.residuals.push_back((F.J * ak - rhs).norm() / rn);
    out.derivatives.push_back(factorial(k) * ak);
    a.push_back(std::move(ak));
  }

  auto add = [&](PartitionSet set, int i, auto&& f) {
    SeriesQuantity q{set, i, {}};
    for (int k = 1; k <= K; ++k) q.values.push_back(f(k));
    out.quantities.push_back(std::move(q));
  };
  for (int i : r.partition.T1) {
    const int n = S.dim(i);
    add(PartitionSet::kT1, i, [&](int k) { return out.derivatives[k - 1].segment(r.u_offset(i), n).norm(); });
  }
  for (int i : r.partition.T2) {
    const int n = S.dim(i);
    add(PartitionSet::kT2, i, [&](int k) {
      double qk = 0.0;
      for (int j = 0; j <= k; ++j) {
        const Eigen::VectorXd uj = a[j].segment(r.u_offset(i), n);
        qk += uj.dot(reflect(a[k - j].segment(r.u_offset(i), n)));
      }
      return factorial(k) * qk;
    });
  }
  for (int i : r.partition.T3)
    add(PartitionSet::kT3, i, [&](int k) { return out.derivatives[k - 1](r.v_index(i)); });
  return out;
}

const char* to_string(TransitionVerdict v) {
  switch (v) {
    case TransitionVerdict::kNonlinearityMember: return "NONLINEARITY_MEMBER";
    case TransitionVerdict::kTransitionPoint: return "TRANSITION_POINT";
    case TransitionVerdict::kInapplicable: return "INAPPLICABLE";
  }
  return "?";
}

double derivative_growth(int k) { return std::pow(10.0, 0.5 * (k - 1)); }

TransitionReport classify_point(const ParametricInstance& inst, double eps_bar, const ClassifyOptions& opts) {
  TransitionReport rep;
  rep.eps = eps_bar;
  const SolveReport sol = solve(inst, eps_bar, opts.solver);
  rep.partition = classify(sol.triple, opts.classification_tol);
  rep.primal_nondegenerate = primal_nondegenerate(inst, sol.triple, rep.partition, opts.rank_tol);
  rep.dual_nondegenerate = dual_nondegenerate(inst, sol.triple, rep.partition, opts.rank_tol);
  std::string flags;
  if (!rep.partition.low_confidence.empty()) {
    flags = "LOW_CONFIDENCE blocks:";
    for (int i : rep.partition.low_confidence) flags += " " + std::to_string(i + 1);
  }
  auto finish = [&](std::string note) {
    if (!flags.empty()) note += note.empty() ? flags : "; " + flags;
    rep.note = std::move(note);
    return rep;
  };
  if (!rep.primal_nondegenerate || !rep.dual_nondegenerate) {
    rep.verdict = TransitionVerdict::kInapplicable;
    std::string which = !rep.primal_nondegenerate && !rep.dual_nondegenerate ? "primal and dual"
                        : !rep.primal_nondegenerate                          ? "primal"
                                                                             : "dual";
    return finish(which + " nondegeneracy fails; the derivative test does not apply");
  }

  const ReformulationDN reform = build_reformulation(inst, rep.partition);
  rep.corrected = newton_correct(sol.triple, reform, eps_bar, opts.newton);
  rep.series = derivative_series(rep.corrected->point, reform, eps_bar, opts.K, opts.newton.singular_tol);
  rep.orders_checked = opts.K;

  const bool vacuous = rep.partition.T1.empty() && rep.partition.T2.empty() && rep.partition.T3.empty();
  if (vacuous) {
    rep.verdict = TransitionVerdict::kNonlinearityMember;
    return finish("strictly complementary at this point (T empty): membership holds vacuously; "
                  "Algorithm 1 applies directly");
  }
  for (int k = 1; k <= opts.K && !rep.violation; ++k) {
    const double tol = opts.deriv_tol * derivative_growth(k);
    for (const auto& q : rep.series->quantities) {
      const double val = q.values[k - 1];
      if (std::abs(val) > tol) {
        rep.violation = TransitionViolation{q.set, q.block, k, val, tol};
        break;
      }
    }
  }
  if (rep.violation) {
    rep.verdict = TransitionVerdict::kTransitionPoint;
    return finish("");
  }
  rep.verdict = TransitionVerdict::kNonlinearityMember;
  return finish("no nonzero derivative up to order " + std::to_string(opts.K) +
                "; higher orders are not examined");
}

}  // namespace socpart
