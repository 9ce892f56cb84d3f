#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "socpart/cones.hpp"
#include "socpart/errors.hpp"

using namespace socpart;

TEST_SUITE("cones") {
  TEST_CASE("arrow matrix") {
    CHECK(arrow_matrix(vec({1, 0, 0})).isApprox(Eigen::MatrixXd::Identity(3, 3)));
    Eigen::MatrixXd want(3, 3);
    want << 1, 0, 1, 0, 1, 0, 1, 0, 1;
    CHECK(arrow_matrix(vec({1, 0, 1})) == want);
    CHECK(arrow_matrix(vec({4})) == Eigen::MatrixXd::Constant(1, 1, 4));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(want);
    CHECK(max_abs(es.eigenvalues() - vec({0, 1, 2})) < 1e-12);
  }

  TEST_CASE("jordan product") {
    CHECK(max_abs(jordan_product(vec({2, 1, 0}), vec({1, 1, 0})) - vec({3, 3, 0})) == 0.0);

    ConeStructure K({3, 3});
    ConeVector x(K, vec({1, 0, 1, 2, 0, 2}));
    ConeVector s(K, vec({1, 0, -1, 0, 0, 0}));
    CHECK(max_abs(jordan_product(x, s).values()) < 1e-15);

    ConeVector e = ConeVector::Identity(K);
    CHECK(jordan_product(e, s).values() == s.values());

    ConeVector bad(ConeStructure({6}), Eigen::VectorXd::Zero(6));
    CHECK_THROWS_AS(jordan_product(x, bad), Error);
  }

  TEST_CASE("spectral decomposition") {
    const SpectralFrame id = spectral_decomposition(vec({1, 0, 0}));
    CHECK(max_abs(id.eigenvalues - vec({1, 1, 1})) == 0.0);

    const SpectralFrame f = spectral_decomposition(vec({1, 0, 1}));
    CHECK(f.positive_eigenvectors.cols() == 2);
    const Eigen::MatrixXd Q = f.eigenvectors;
    CHECK((Q.transpose() * Q).isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));
    CHECK((Q * f.eigenvalues.asDiagonal() * Q.transpose()).isApprox(arrow_matrix(vec({1, 0, 1})), 1e-12));

    const SpectralFrame z = spectral_decomposition(vec({0, 0, 0}));
    CHECK(max_abs(z.eigenvalues) == 0.0);
    CHECK(z.positive_eigenvectors.cols() == 0);
  }

  TEST_CASE("classify block") {
    CHECK(classify_block(vec({1, 0, 0}), 1e-8) == BlockClass::kInterior);
    CHECK(classify_block(vec({1, 1, 0}), 1e-8) == BlockClass::kBoundaryNonzero);
    CHECK(classify_block(vec({1, 2, 0}), 1e-8) == BlockClass::kOutside);
    CHECK(classify_block(vec({0, 0, 0}), 1e-8) == BlockClass::kZero);
    CHECK(classify_block(vec({3}), 1e-8) == BlockClass::kInterior);
    CHECK(classify_block(vec({-3}), 1e-8) == BlockClass::kOutside);
  }

  TEST_CASE("reflection") {
    CHECK(reflection_apply(vec({1, 2, 3})) == vec({1, -2, -3}));
    CHECK(reflection_apply(vec({5})) == vec({5}));
    const Eigen::VectorXd x = vec({1, 1, 0});
    CHECK(x.dot(reflection_apply(x)) == 0.0);
  }

  TEST_CASE("random blocks: eigenvalue law, commutativity, involution") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + static_cast<int>(rng() % 10);
      Eigen::VectorXd x(n), s(n);
      for (int i = 0; i < n; ++i) {
        x(i) = nd(rng);
        s(i) = nd(rng);
      }
      const Eigen::MatrixXd L = arrow_matrix(x);
      CHECK(L.isApprox(L.transpose()));
      Eigen::VectorXd a = spectral_decomposition(x).eigenvalues;
      std::sort(a.data(), a.data() + n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
      CHECK(max_abs(a - es.eigenvalues()) <= 1e-10);

      CHECK(max_abs(jordan_product(x, s) - jordan_product(s, x)) <= 1e-14);
      CHECK(reflection_apply(reflection_apply(x)) == x);
      const double q = n > 1 ? x(0) * x(0) - x.tail(n - 1).squaredNorm() : x(0) * x(0);
      CHECK(std::abs(x.dot(reflection_apply(x)) - q) <= 1e-12);

      int hits = 0;
      for (double tol : {0.0, 1e-8, 0.5}) {
        const BlockClass c = classify_block(x, tol);
        hits += c == BlockClass::kInterior || c == BlockClass::kBoundaryNonzero || c == BlockClass::kZero ||
                c == BlockClass::kOutside;
      }
      CHECK(hits == 3);
    }
  }
}
