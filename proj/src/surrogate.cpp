#include "kmpc/surrogate.hpp"

#include <nlohmann/json.hpp>

#include "kmpc/parallel.hpp"

namespace kmpc {

using json = nlohmann::ordered_json;

Vec SurrogateModel::predict(const Vec& x, const Vec& u) const {
  const int m = input_dim();
  if (x.size() != state_dim() || u.size() != m)
    throw std::invalid_argument("predict: dimension mismatch");
  const Vec kf = kernel_features(x, nodes, kernel);
  Vec out = zmat[0] * kf;
  for (int k = 0; k < m; ++k) out += u[k] * (zmat[k + 1] * kf);
  return out;
}

Mat SurrogateModel::jacobian_u(const Vec& x, const Vec& u) const {
  (void)u;
  const int m = input_dim();
  const Vec kf = kernel_features(x, nodes, kernel);
  Mat B(state_dim(), m);
  for (int k = 0; k < m; ++k) B.col(k) = zmat[k + 1] * kf;
  return B;
}

void SurrogateModel::rebuild() {
  kernel.validate();
  if (vertex_images.empty()) throw std::invalid_argument("surrogate without vertex images");
  kfact = factorize_spd(kernel_matrix(nodes, nodes, kernel), kernel.jitter_rel);
  const std::size_t terms = vertex_images.size();
  khat.assign(terms, Mat());
  zmat.assign(terms, Mat());
  parallel_for(terms, [&](std::size_t k) {
    const Mat Kg = kernel_matrix(vertex_images[k], nodes, kernel);
    const Mat left = kfact.solve(Kg);                        // K^{-1} K_g
    const Mat left_t = left.transpose();
    khat[k] = kfact.solve(left_t).transpose();               // K^{-1} K_g K^{-1}
    zmat[k] = (khat[k] * nodes).transpose();
  });
}

Mat local_regression(const Cluster& cluster, bool pi_at_origin) {
  const int n = static_cast<int>(cluster.x_plus.cols());
  const int m = static_cast<int>(cluster.u.cols());
  const Mat targets = cluster.x_plus;  // d_i x n

  Mat H(n, m + 1);
  if (pi_at_origin) {
    // x+ ~ G u with the constant part pinned to the origin.
    Eigen::JacobiSVD<Mat> svd(cluster.u, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    if (svd.rank() < m) throw std::runtime_error("cluster regression degenerate");
    H.col(0).setZero();
    H.rightCols(m) = svd.solve(targets).transpose();
  } else {
    const Mat Vt = regression_matrix(cluster).transpose();  // d_i x (m+1)
    Eigen::JacobiSVD<Mat> svd(Vt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    if (svd.rank() < m + 1) throw std::runtime_error("cluster regression degenerate");
    H = svd.solve(targets).transpose();
  }
  return H;
}

SurrogateModel fit_control_affine(const ClusterDataset& dataset, const KernelSpec& spec,
                                  bool pi_variant) {
  if (dataset.clusters.empty()) throw std::invalid_argument("fit_control_affine: empty dataset");
  const int d = dataset.size();
  const int n = static_cast<int>(dataset.clusters.front().x_plus.cols());
  const int m = static_cast<int>(dataset.clusters.front().u.cols());

  SurrogateModel model;
  model.kernel = spec;
  model.kernel.dimension = n;
  model.pi_variant = pi_variant;
  model.seed = dataset.seed;
  model.data_hash = dataset_hash(dataset);
  model.nodes = dataset.centers();
  model.vertex_images.assign(m + 1, Mat(d, n));

  std::vector<Mat> H(d);
  parallel_for(static_cast<std::size_t>(d), [&](std::size_t i) {
    H[i] = local_regression(dataset.clusters[i], pi_variant && i == 0);
  });
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= m; ++k) model.vertex_images[k].row(i) = H[i].col(k).transpose();

  model.rebuild();
  return model;
}

SurrogateModel fit_autonomous(const Mat& nodes, const Mat& images, const KernelSpec& spec) {
  if (images.rows() != nodes.rows() || images.cols() != nodes.cols())
    throw std::invalid_argument("fit_autonomous: image count mismatch");
  SurrogateModel model;
  model.kernel = spec;
  model.kernel.dimension = static_cast<int>(nodes.cols());
  model.nodes = nodes;
  model.vertex_images = {images};
  model.rebuild();
  return model;
}

double equilibrium_residual(const SurrogateModel& model) {
  return model.predict(Vec::Zero(model.state_dim()), Vec::Zero(model.input_dim())).norm();
}

namespace {

json mat_to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Mat mat_from_json(const json& rows) {
  if (rows.empty()) return Mat();
  Mat M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j].get<double>();
  return M;
}

}  // namespace

json model_to_json(const SurrogateModel& model) {
  json j;
  j["kernel_spec"] = json{{"dimension", model.kernel.dimension},
                          {"smoothness", model.kernel.smoothness},
                          {"support_radius", model.kernel.support_radius},
                          {"jitter_rel", model.kernel.jitter_rel}};
  j["nodes"] = mat_to_json(model.nodes);
  json imgs = json::array();
  for (const Mat& vi : model.vertex_images) imgs.push_back(mat_to_json(vi));
  j["vertex_images"] = std::move(imgs);
  j["pi_variant"] = model.pi_variant;
  j["seed"] = model.seed;
  j["dataset_hash"] = model.data_hash;
  return j;
}

SurrogateModel model_from_json(const json& j) {
  SurrogateModel model;
  const json& k = j.at("kernel_spec");
  model.kernel.dimension = k.at("dimension").get<int>();
  model.kernel.smoothness = k.at("smoothness").get<int>();
  model.kernel.support_radius = k.at("support_radius").get<double>();
  model.kernel.jitter_rel = k.at("jitter_rel").get<double>();
  model.nodes = mat_from_json(j.at("nodes"));
  for (const json& vi : j.at("vertex_images")) model.vertex_images.push_back(mat_from_json(vi));
  model.pi_variant = j.at("pi_variant").get<bool>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.data_hash = j.at("dataset_hash").get<std::string>();
  model.rebuild();
  return model;
}

}  // namespace kmpc
