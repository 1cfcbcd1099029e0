#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "kmpc/kernel.hpp"
#include "kmpc/rng.hpp"

using namespace kmpc;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("wendland phi: reference values") {
  KernelSpec spec;
  CHECK(wendland_phi(0.0, spec) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(wendland_phi(1.0, spec) == 0.0);
  CHECK(wendland_phi(1.5, spec) == 0.0);
  // (1/20) * 0.5^4 * 3
  CHECK(wendland_phi(0.5, spec) == doctest::Approx(0.009375).epsilon(1e-15));

  KernelSpec wide = spec;
  wide.support_radius = 2.0;
  CHECK(wendland_phi(1.0, wide) == doctest::Approx(0.009375).epsilon(1e-15));
  CHECK(wendland_phi(2.0, wide) == 0.0);
}

TEST_CASE("wendland phi: continuous and non-increasing on [0, sigma]") {
  KernelSpec spec;
  double prev = wendland_phi(0.0, spec);
  for (int i = 1; i <= 1000; ++i) {
    const double cur = wendland_phi(i / 1000.0, spec);
    CHECK(cur <= prev + 1e-15);
    CHECK(std::abs(cur - prev) < 5e-3);
    prev = cur;
  }
  CHECK(prev == 0.0);
}

TEST_CASE("wendland phi: unsupported smoothness rejected") {
  KernelSpec spec;
  spec.smoothness = 2;
  CHECK_THROWS_WITH_AS(wendland_phi(0.5, spec), "unsupported kernel order", std::invalid_argument);
}

TEST_CASE("kernel_eval: symmetry, support, hand values") {
  KernelSpec spec;
  CHECK(kernel_eval(v2(0.7, -0.3), v2(0.7, -0.3), spec) == doctest::Approx(0.05));
  CHECK(kernel_eval(v2(0, 0), v2(2, 0), spec) == 0.0);
  CHECK(kernel_eval(v2(0, 0), v2(0.3, 0.4), spec) == doctest::Approx(0.009375).epsilon(1e-15));

  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const Vec x = rng.normal_vec(2);
    const Vec y = rng.normal_vec(2);
    CHECK(kernel_eval(x, y, spec) == kernel_eval(y, x, spec));
    // compact support is exact
    CHECK((kernel_eval(x, y, spec) == 0.0) == ((x - y).norm() >= spec.support_radius));
  }

  Vec bad(3);
  bad.setZero();
  CHECK_THROWS_AS(kernel_eval(bad, bad, spec), std::invalid_argument);
}

TEST_CASE("kernel_matrix: small cases") {
  KernelSpec spec;
  spec.dimension = 1;
  Mat one(1, 1);
  one << 0.0;
  const Mat K1 = kernel_matrix(one, one, spec);
  CHECK(K1.rows() == 1);
  CHECK(K1(0, 0) == doctest::Approx(0.05));

  spec.dimension = 2;
  Mat X(2, 2);
  X << 0, 0, 2, 2;
  const Mat K2 = kernel_matrix(X, X, spec);
  CHECK(K2(0, 0) == doctest::Approx(0.05));
  CHECK(K2(1, 1) == doctest::Approx(0.05));
  CHECK(K2(0, 1) == 0.0);
  CHECK(K2(1, 0) == 0.0);

  // 3 collinear points spaced 0.5 apart
  Mat C(3, 2);
  C << 0, 0, 0.5, 0, 1.0, 0;
  const Mat K3 = kernel_matrix(C, C, spec);
  CHECK(K3.isApprox(K3.transpose(), 1e-15));
  CHECK(K3(0, 1) == doctest::Approx(0.009375));
  CHECK(K3(1, 2) == doctest::Approx(0.009375));
  CHECK(K3(0, 2) == 0.0);

  CHECK_THROWS_AS(kernel_matrix(Mat(0, 2), X, spec), std::invalid_argument);
}

TEST_CASE("kernel_features: matches matrix columns, vanishes far away") {
  KernelSpec spec;
  Rng rng(11);
  Mat nodes(6, 2);
  for (int i = 0; i < 6; ++i) nodes.row(i) = (0.4 * rng.normal_vec(2)).transpose();
  const Mat K = kernel_matrix(nodes, nodes, spec);
  for (int j = 0; j < 6; ++j) {
    const Vec f = kernel_features(nodes.row(j).transpose(), nodes, spec);
    CHECK((f - K.col(j)).norm() == doctest::Approx(0.0));
  }
  CHECK(kernel_features(v2(50, 50), nodes, spec).norm() == 0.0);

  Mat two(2, 2);
  two << 0.5, 0, -0.5, 0;
  const Vec f = kernel_features(v2(0, 0), two, spec);
  CHECK(f[0] == doctest::Approx(0.009375));
  CHECK(f[1] == doctest::Approx(0.009375));
}

TEST_CASE("factorize_spd: identity, scalar, random reconstruction") {
  const Mat I5 = Mat::Identity(5, 5);
  const SpdFactorization fi = factorize_spd(I5, 0.0);
  CHECK(fi.jitter == 0.0);
  CHECK(fi.chol.isApprox(I5, 1e-15));

  Mat s(1, 1);
  s << 0.05;
  const SpdFactorization fs = factorize_spd(s, 0.0);
  CHECK(fs.chol(0, 0) == doctest::Approx(std::sqrt(0.05)).epsilon(1e-14));

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Mat A(5, 5);
    for (int i = 0; i < 5; ++i) A.row(i) = rng.normal_vec(5).transpose();
    const Mat K = A * A.transpose() + 0.5 * Mat::Identity(5, 5);
    const SpdFactorization f = factorize_spd(K, 1e-10);
    const double rel = (f.reconstruct() - (K + f.jitter * Mat::Identity(5, 5))).norm() / K.norm();
    CHECK(rel <= 1e-12);
    CHECK(f.chol.diagonal().minCoeff() > 0.0);
  }
}

TEST_CASE("factorize_spd: duplicate nodes escalate and fail") {
  // exactly singular kernel matrix from duplicated points
  Mat K(2, 2);
  K << 0.05, 0.05, 0.05, 0.05;
  CHECK_THROWS_WITH_AS(factorize_spd(K - 0.06 * Mat::Identity(2, 2), 0.0),
                       "kernel matrix numerically singular", std::runtime_error);
}

TEST_CASE("kernel matrices of random distinct nodes are positive definite") {
  KernelSpec spec;
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform01() * 18);
    Mat nodes(d, 2);
    for (int i = 0; i < d; ++i)
      nodes.row(i) = rng.uniform_in_box(Box::cube(2, -2, 2)).transpose();
    const Mat K = kernel_matrix(nodes, nodes, spec);
    Eigen::SelfAdjointEigenSolver<Mat> eig(K);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("interpolant: node exactness and hand 2x2 solve") {
  KernelSpec spec;
  Rng rng(5);
  Mat nodes(8, 2);
  for (int i = 0; i < 8; ++i) nodes.row(i) = rng.uniform_in_box(Box::cube(2, -1, 1)).transpose();
  const KernelInterpolator interp = build_interpolator(nodes, spec);

  for (int j = 0; j < 8; ++j) {
    Vec e = Vec::Zero(8);
    e[j] = 1.0;
    CHECK(interpolant_eval(interp, e, nodes.row(j).transpose()) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(interpolant_eval(interp, Vec::Zero(8), v2(0.2, 0.1)) == 0.0);

  // two symmetric nodes, values (1,1), evaluated at the midpoint; oracle is
  // the explicit 2x2 solve
  Mat two(2, 2);
  two << -0.25, 0, 0.25, 0;
  const KernelInterpolator i2 = build_interpolator(two, spec);
  const double diag = 0.05;
  const double off = wendland_phi(0.5, spec);
  const double feat = wendland_phi(0.25, spec);
  // K alpha = (feat, feat) => alpha_i = feat / (diag + off) by symmetry
  const double oracle = 2.0 * feat / (diag + off);
  Vec ones(2);
  ones << 1, 1;
  CHECK(interpolant_eval(i2, ones, v2(0, 0)) == doctest::Approx(oracle).epsilon(1e-9));

  CHECK_THROWS_AS(interpolant_eval(interp, Vec::Zero(3), v2(0, 0)), std::invalid_argument);
}

TEST_CASE("interpolant: node values reproduced to 1e-8 with default jitter") {
  KernelSpec spec;
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 12;
    Mat nodes(d, 2);
    for (int i = 0; i < d; ++i)
      nodes.row(i) = rng.uniform_in_box(Box::cube(2, -1.5, 1.5)).transpose();
    const KernelInterpolator interp = build_interpolator(nodes, spec);
    Vec values(d);
    for (int i = 0; i < d; ++i)
      values[i] = std::sin(nodes(i, 0)) + 0.3 * nodes(i, 1);
    for (int j = 0; j < d; ++j) {
      const double got = interpolant_eval(interp, values, nodes.row(j).transpose());
      CHECK(got == doctest::Approx(values[j]).epsilon(1e-8));
    }
  }
}
