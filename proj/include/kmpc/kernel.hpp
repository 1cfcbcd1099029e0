#pragma once

#include "kmpc/types.hpp"

namespace kmpc {

// Compactly supported Wendland radial kernel. Only the (n,1) family is
// implemented; the value at distance >= support_radius is exactly zero.
struct KernelSpec {
  int dimension = 2;
  int smoothness = 1;
  double support_radius = 1.0;
  double jitter_rel = 1e-10;

  void validate() const;
};

// phi_{n,1}(r / sigma) = (1/20) (1 - t)^4 (4t + 1) on t in [0,1], else 0.
double wendland_phi(double r, const KernelSpec& spec);

double kernel_eval(const Vec& x, const Vec& y, const KernelSpec& spec);

// Entry (i,j) = k(X.row(i), Y.row(j)). Rows are points. Assembly is
// parallel over rows; output is schedule-independent.
Mat kernel_matrix(const Mat& X, const Mat& Y, const KernelSpec& spec);

// Canonical feature vector k_X(x), component i = k(x, nodes.row(i)).
Vec kernel_features(const Vec& x, const Mat& nodes, const KernelSpec& spec);

// Cholesky factor of K + lambda*I with lambda = jitter_rel * trace(K)/d.
// Solves go through the factor; no explicit inverse is ever formed.
struct SpdFactorization {
  Mat chol;            // lower triangular L, L L^T = K + jitter*I
  double jitter = 0.0;

  int size() const { return static_cast<int>(chol.rows()); }
  Vec solve(const Vec& rhs) const;
  Mat solve(const Mat& rhs) const;
  Mat reconstruct() const { return chol * chol.transpose(); }
};

SpdFactorization factorize_spd(const Mat& K, double jitter_rel);

// Node set together with the factorization of its kernel matrix.
struct KernelInterpolator {
  Mat nodes;           // d x n
  KernelSpec spec;
  SpdFactorization fact;
};

KernelInterpolator build_interpolator(const Mat& nodes, const KernelSpec& spec);

// values^T K_X^{-1} k_X(x): the orthogonal-projection interpolant of the
// node values, evaluated at x.
double interpolant_eval(const KernelInterpolator& interp, const Vec& values, const Vec& x);

}  // namespace kmpc
