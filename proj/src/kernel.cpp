#include "kmpc/kernel.hpp"

#include <cmath>

#include "kmpc/parallel.hpp"

namespace kmpc {

void KernelSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("kernel dimension must be >= 1");
  if (smoothness < 1) throw std::invalid_argument("kernel smoothness must be >= 1");
  if (!(support_radius > 0.0)) throw std::invalid_argument("kernel support radius must be > 0");
  if (jitter_rel < 0.0) throw std::invalid_argument("kernel jitter must be >= 0");
}

double wendland_phi(double r, const KernelSpec& spec) {
  if (spec.smoothness != 1) throw std::invalid_argument("unsupported kernel order");
  if (r < 0.0) throw std::invalid_argument("wendland_phi: negative radius");
  const double t = r / spec.support_radius;
  if (t >= 1.0) return 0.0;
  const double s = 1.0 - t;
  const double s2 = s * s;
  return 0.05 * s2 * s2 * (4.0 * t + 1.0);
}

double kernel_eval(const Vec& x, const Vec& y, const KernelSpec& spec) {
  if (x.size() != y.size() || x.size() != spec.dimension)
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  return wendland_phi((x - y).norm(), spec);
}

Mat kernel_matrix(const Mat& X, const Mat& Y, const KernelSpec& spec) {
  if (X.rows() == 0 || Y.rows() == 0) throw std::invalid_argument("kernel_matrix: empty point list");
  if (X.cols() != spec.dimension || Y.cols() != spec.dimension)
    throw std::invalid_argument("kernel_matrix: dimension mismatch");
  Mat K(X.rows(), Y.rows());
  parallel_for(static_cast<std::size_t>(X.rows()), [&](std::size_t i) {
    for (Eigen::Index j = 0; j < Y.rows(); ++j)
      K(static_cast<Eigen::Index>(i), j) =
          wendland_phi((X.row(static_cast<Eigen::Index>(i)) - Y.row(j)).norm(), spec);
  });
  return K;
}

Vec kernel_features(const Vec& x, const Mat& nodes, const KernelSpec& spec) {
  if (x.size() != spec.dimension || nodes.cols() != spec.dimension)
    throw std::invalid_argument("kernel_features: dimension mismatch");
  Vec k(nodes.rows());
  for (Eigen::Index i = 0; i < nodes.rows(); ++i)
    k[i] = wendland_phi((x.transpose() - nodes.row(i)).norm(), spec);
  return k;
}

SpdFactorization factorize_spd(const Mat& K, double jitter_rel) {
  if (K.rows() != K.cols()) throw std::invalid_argument("factorize_spd: matrix not square");
  const double mean_diag = K.trace() / static_cast<double>(K.rows());
  // Escalate the jitter x100 up to 3 times before giving up; a failure here
  // signals duplicate or near-duplicate nodes.
  for (int attempt = 0; attempt < 4; ++attempt) {
    double rel = jitter_rel;
    if (attempt > 0) rel = std::max(jitter_rel, 1e-14) * std::pow(100.0, attempt);
    const double lambda = rel * mean_diag;
    Eigen::LLT<Mat> llt(K + lambda * Mat::Identity(K.rows(), K.cols()));
    if (llt.info() == Eigen::Success) {
      SpdFactorization f;
      f.chol = llt.matrixL();
      f.jitter = lambda;
      if (f.chol.diagonal().minCoeff() > 0.0) return f;
    }
  }
  throw std::runtime_error("kernel matrix numerically singular");
}

Vec SpdFactorization::solve(const Vec& rhs) const {
  Vec y = chol.triangularView<Eigen::Lower>().solve(rhs);
  return chol.transpose().triangularView<Eigen::Upper>().solve(y);
}

Mat SpdFactorization::solve(const Mat& rhs) const {
  Mat y = chol.triangularView<Eigen::Lower>().solve(rhs);
  return chol.transpose().triangularView<Eigen::Upper>().solve(y);
}

KernelInterpolator build_interpolator(const Mat& nodes, const KernelSpec& spec) {
  spec.validate();
  KernelInterpolator interp;
  interp.nodes = nodes;
  interp.spec = spec;
  interp.fact = factorize_spd(kernel_matrix(nodes, nodes, spec), spec.jitter_rel);
  return interp;
}

double interpolant_eval(const KernelInterpolator& interp, const Vec& values, const Vec& x) {
  if (values.size() != interp.nodes.rows())
    throw std::invalid_argument("interpolant_eval: value count != node count");
  return values.dot(interp.fact.solve(kernel_features(x, interp.nodes, interp.spec)));
}

}  // namespace kmpc
