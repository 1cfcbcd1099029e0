#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kmpc/data.hpp"
#include "kmpc/kernel.hpp"
#include "kmpc/model.hpp"

namespace kmpc {

// Control-affine kEDMD surrogate
//   f_eps(x, u) = Psi_X^T (Khat_0 + sum_k Khat_k u_k)^T k_X(x)
// with Khat_k = K_X^{-1} K_{g_k(X)} K_X^{-1} and the coordinate functions as
// observables. The autonomous case is m = 0 with a single propagation
// matrix.
class SurrogateModel final : public DynamicsModel {
 public:
  KernelSpec kernel;
  Mat nodes;                       // d x n cluster points, row 0 = origin for PI fits
  std::vector<Mat> vertex_images;  // k in [0:m], each d x n; rows are g_k(x_i) estimates
  bool pi_variant = false;
  std::uint64_t seed = 0;
  std::string data_hash;

  // Derived (rebuilt after deserialization, never stored):
  SpdFactorization kfact;   // of K_X
  std::vector<Mat> khat;    // d x d propagation matrices
  std::vector<Mat> zmat;    // n x d collapsed observables Psi^T Khat^T

  int state_dim() const override { return static_cast<int>(nodes.cols()); }
  int input_dim() const override { return static_cast<int>(vertex_images.size()) - 1; }

  Vec predict(const Vec& x, const Vec& u) const override;

  // Analytic: the surrogate is exactly affine in u.
  Mat jacobian_u(const Vec& x, const Vec& u) const override;

  // Recompute factorization and propagation matrices from the stored fields.
  void rebuild();
};

// Least-squares estimate H_i = [g0(x_i) | G(x_i)] from one cluster,
// H_i = X+ V^+ with an SVD pseudoinverse (relative cutoff 1e-10). With
// pi_at_origin the constant column is pinned to zero and only the input
// columns are fit.
Mat local_regression(const Cluster& cluster, bool pi_at_origin);

SurrogateModel fit_control_affine(const ClusterDataset& dataset, const KernelSpec& spec,
                                  bool pi_variant);

SurrogateModel fit_autonomous(const Mat& nodes, const Mat& images, const KernelSpec& spec);

// |f_eps(0,0)|; zero (to solver tolerance) exactly for PI fits.
double equilibrium_residual(const SurrogateModel& model);

nlohmann::ordered_json model_to_json(const SurrogateModel& model);
SurrogateModel model_from_json(const nlohmann::ordered_json& j);

}  // namespace kmpc
