#pragma once

// Scalar-generic single-block kernels shared by the double-precision public
// API and the extended-precision interior-point solver.

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace socpart::kernels {

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
auto tail_norm(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  return x.size() > 1 ? x.tail(x.size() - 1).norm() : S(0);
}

template <typename Derived>
Mat<typename Derived::Scalar> arrow(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  Mat<S> L = Mat<S>::Identity(n, n) * x(0);
  L.row(0) = x.transpose();
  L.col(0) = x;
  return L;
}

template <typename D1, typename D2>
Vec<typename D1::Scalar> jordan(const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& s) {
  using S = typename D1::Scalar;
  const Eigen::Index n = x.size();
  Vec<S> r(n);
  r(0) = x.dot(s);
  if (n > 1) r.tail(n - 1) = x(0) * s.tail(n - 1) + s(0) * x.tail(n - 1);
  return r;
}

// det(x) = x_1^2 - ||x_{2:n}||^2, evaluated as a product of eigenvalues.
template <typename Derived>
auto jordan_det(const Eigen::MatrixBase<Derived>& x) {
  const auto t = tail_norm(x);
  if (x.size() == 1) return x(0);
  return (x(0) - t) * (x(0) + t);
}

// Solves L(lambda) q = r for lambda in the interior of the cone. A known
// det(lambda) can be passed in when the direct formula would cancel.
template <typename D1, typename D2>
Vec<typename D1::Scalar> arrow_solve(const Eigen::MatrixBase<D1>& lambda, const Eigen::MatrixBase<D2>& r,
                                     typename D1::Scalar det_lambda = 0) {
  using S = typename D1::Scalar;
  const Eigen::Index n = lambda.size();
  Vec<S> q(n);
  if (n == 1) {
    q(0) = r(0) / lambda(0);
    return q;
  }
  const S l1 = lambda(0);
  const auto lt = lambda.tail(n - 1);
  const auto rt = r.tail(n - 1);
  const S det = det_lambda > 0 ? det_lambda : jordan_det(lambda);
  q(0) = (l1 * r(0) - lt.dot(rt)) / det;
  q.tail(n - 1) = (rt - lt * q(0)) / l1;
  return q;
}

// Largest alpha in [0, inf] with u + alpha d in the cone, for u interior.
template <typename D1, typename D2>
typename D1::Scalar max_step(const Eigen::MatrixBase<D1>& u, const Eigen::MatrixBase<D2>& d) {
  using S = typename D1::Scalar;
  const S inf = std::numeric_limits<S>::infinity();
  const Eigen::Index n = u.size();
  if (n == 1) return d(0) < 0 ? -u(0) / d(0) : inf;

  // q(alpha) = a alpha^2 + b alpha + c with c = det(u) > 0.
  const S a = d(0) * d(0) - d.tail(n - 1).squaredNorm();
  const S b = S(2) * (u(0) * d(0) - u.tail(n - 1).dot(d.tail(n - 1)));
  const S c = jordan_det(u);

  S alpha = inf;
  // First-component constraint: u_1 + alpha d_1 >= 0.
  if (d(0) < 0) alpha = -u(0) / d(0);

  const S disc = b * b - S(4) * a * c;
  if (a == S(0)) {
    if (b < 0) alpha = std::min(alpha, -c / b);
  } else if (disc >= 0) {
    const S sq = std::sqrt(disc);
    const S qq = S(-0.5) * (b + (b >= 0 ? sq : -sq));
    S r1 = qq / a;
    S r2 = (qq != S(0)) ? c / qq : r1;
    for (S r : {r1, r2}) {
      if (r > 0 && std::isfinite(static_cast<double>(r))) alpha = std::min(alpha, r);
    }
  }
  return alpha;
}

}  // namespace socpart::kernels
