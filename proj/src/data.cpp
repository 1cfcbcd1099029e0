#include "kmpc/data.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "kmpc/parallel.hpp"
#include "kmpc/rng.hpp"
#include "kmpc/sha256.hpp"

namespace kmpc {

using json = nlohmann::ordered_json;

Mat ClusterDataset::centers() const {
  if (clusters.empty()) return Mat();
  Mat C(clusters.size(), clusters.front().center.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) C.row(i) = clusters[i].center.transpose();
  return C;
}

Mat padua_points(int degree, const Box& box) {
  if (box.dim() != 2) throw std::invalid_argument("padua_points: box must be 2-D");
  if (degree < 1) throw std::invalid_argument("padua_points: degree must be >= 1");
  const int count = (degree + 1) * (degree + 2) / 2;
  Mat pts(count, 2);
  int idx = 0;
  // Subset of the (degree+1) x (degree+2) Chebyshev-Lobatto grid with even
  // index sum.
  for (int j = 0; j <= degree; ++j) {
    const double cx = std::cos(j * std::numbers::pi / degree);
    for (int k = 0; k <= degree + 1; ++k) {
      if ((j + k) % 2 != 0) continue;
      const double cy = std::cos(k * std::numbers::pi / (degree + 1));
      pts(idx, 0) = box.lo[0] + 0.5 * (cx + 1.0) * (box.hi[0] - box.lo[0]);
      pts(idx, 1) = box.lo[1] + 0.5 * (cy + 1.0) * (box.hi[1] - box.lo[1]);
      ++idx;
    }
  }
  if (idx != count) throw std::logic_error("padua_points: count mismatch");
  return pts;
}

Mat build_observation_grid(int degree, const Box& box) {
  Vec origin = Vec::Zero(2);
  if (!box.contains(origin)) throw std::invalid_argument("build_observation_grid: origin outside box");
  const Mat padua = padua_points(degree, box);
  std::vector<int> keep;
  keep.reserve(padua.rows());
  for (Eigen::Index i = 0; i < padua.rows(); ++i)
    if (padua.row(i).norm() > 1e-12) keep.push_back(static_cast<int>(i));
  Mat grid(1 + keep.size(), 2);
  grid.row(0).setZero();
  for (std::size_t i = 0; i < keep.size(); ++i) grid.row(1 + i) = padua.row(keep[i]);
  return grid;
}

int padua_degree_for_count(int total_points) {
  int below = 2, above = 0;
  for (int deg = 1; deg <= 2000; ++deg) {
    const int total = (deg + 1) * (deg + 2) / 2 + 1;
    if (total == total_points) return deg;
    if (total < total_points) below = total;
    if (total > total_points) {
      above = total;
      break;
    }
  }
  throw std::invalid_argument("no Padua degree yields " + std::to_string(total_points) +
                              " points; nearest realizable totals are " + std::to_string(below) +
                              " and " + std::to_string(above));
}

Mat regression_matrix(const Cluster& cluster) {
  if (cluster.size() == 0) throw std::invalid_argument("regression_matrix: empty cluster");
  const int m = static_cast<int>(cluster.u.cols());
  Mat V(m + 1, cluster.size());
  V.row(0).setOnes();
  V.bottomRows(m) = cluster.u.transpose();
  return V;
}

double smallest_singular_value(const Mat& M) {
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues().minCoeff();
}

namespace {

Cluster generate_cluster(const Plant& plant, const Vec& center, double radius, int count,
                         std::uint64_t stream_seed, int* escaped) {
  const int n = plant.state_dim();
  const int m = plant.input_dim();
  const Box& omega = plant.sampling_box;

  const double dist_to_omega = (omega.clamp(center) - center).norm();
  if (dist_to_omega > radius) throw std::runtime_error("invalid cluster");

  Rng rng(stream_seed);
  Cluster c;
  c.center = center;
  c.radius = radius;
  c.x.resize(count, n);
  c.u.resize(count, m);
  c.x_plus.resize(count, n);

  for (int j = 0; j < count; ++j) {
    Vec xj;
    int tries = 0;
    do {
      xj = rng.ball_point(center, radius);
      if (++tries > 100000) throw std::runtime_error("invalid cluster");
    } while (!omega.contains(xj));
    c.x.row(j) = xj.transpose();
  }

  // Resample the inputs until the regression matrix has full rank with a
  // safely bounded smallest singular value.
  for (int attempt = 0;; ++attempt) {
    for (int j = 0; j < count; ++j) c.u.row(j) = rng.uniform_in_box(plant.input_box).transpose();
    if (smallest_singular_value(regression_matrix(c)) >= 1e-6) break;
    if (attempt >= 100) throw std::runtime_error("degenerate input sampling");
  }

  for (int j = 0; j < count; ++j) {
    const Vec xp = plant.step(c.x.row(j).transpose(), c.u.row(j).transpose());
    c.x_plus.row(j) = xp.transpose();
    if (!omega.contains(xp)) ++(*escaped);
  }
  return c;
}

}  // namespace

ClusterDataset build_cluster_dataset(const Plant& plant, const Mat& centers, double radius,
                                     int samples_per_cluster, std::uint64_t seed,
                                     const KernelSpec& kernel_record) {
  if (centers.rows() == 0) throw std::invalid_argument("build_cluster_dataset: no cluster points");
  if (centers.cols() != plant.state_dim())
    throw std::invalid_argument("build_cluster_dataset: center dimension mismatch");
  if (radius < 0.0) throw std::invalid_argument("build_cluster_dataset: negative radius");
  if (samples_per_cluster < plant.input_dim() + 1)
    throw std::invalid_argument("build_cluster_dataset: need at least m+1 samples per cluster");
  if (centers.row(0).norm() != 0.0)
    throw std::invalid_argument("build_cluster_dataset: first cluster point must be the origin");
  for (Eigen::Index i = 0; i < centers.rows(); ++i)
    for (Eigen::Index j = i + 1; j < centers.rows(); ++j)
      if ((centers.row(i) - centers.row(j)).norm() == 0.0)
        throw std::invalid_argument("build_cluster_dataset: cluster points not pairwise distinct");

  ClusterDataset ds;
  ds.kernel = kernel_record;
  ds.plant_id = plant.id();
  ds.seed = seed;
  ds.clusters.resize(centers.rows());
  std::vector<int> escaped(centers.rows(), 0);
  parallel_for(static_cast<std::size_t>(centers.rows()), [&](std::size_t i) {
    ds.clusters[i] = generate_cluster(plant, centers.row(static_cast<Eigen::Index>(i)).transpose(),
                                      radius, samples_per_cluster, Rng::derive(seed, i), &escaped[i]);
  });
  for (int e : escaped) ds.escaped_count += e;
  return ds;
}

double fill_distance(const Mat& nodes, const Box& omega, double resolution) {
  if (nodes.rows() == 0) throw std::invalid_argument("fill_distance: empty node set");
  if (!(resolution > 0.0)) throw std::invalid_argument("fill_distance: resolution must be > 0");
  const int n = omega.dim();
  std::vector<int> counts(n);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) {
    counts[a] = std::max(2, static_cast<int>(std::ceil((omega.hi[a] - omega.lo[a]) / resolution)) + 1);
    total *= counts[a];
    if (total > 50'000'000) throw std::invalid_argument("fill_distance: grid too fine");
  }
  std::vector<double> worst(thread_budget(), 0.0);
  const std::size_t workers = worst.size();
  const std::size_t chunk = (total + workers - 1) / workers;
  parallel_for(workers, [&](std::size_t w) {
    Vec x(n);
    double local = 0.0;
    const std::size_t end = std::min(total, (w + 1) * chunk);
    for (std::size_t flat = w * chunk; flat < end; ++flat) {
      std::size_t rest = flat;
      for (int a = 0; a < n; ++a) {
        const int ia = static_cast<int>(rest % counts[a]);
        rest /= counts[a];
        x[a] = omega.lo[a] + (omega.hi[a] - omega.lo[a]) * ia / (counts[a] - 1);
      }
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < nodes.rows(); ++i)
        best = std::min(best, (x.transpose() - nodes.row(i)).norm());
      local = std::max(local, best);
    }
    worst[w] = local;
  });
  double h = 0.0;
  for (double v : worst) h = std::max(h, v);
  return h;
}

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& a) {
  Vec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
  return v;
}

json kernel_to_json(const KernelSpec& k) {
  return json{{"dimension", k.dimension},
              {"smoothness", k.smoothness},
              {"support_radius", k.support_radius},
              {"jitter_rel", k.jitter_rel}};
}

KernelSpec kernel_from_json(const json& j) {
  KernelSpec k;
  k.dimension = j.at("dimension").get<int>();
  k.smoothness = j.at("smoothness").get<int>();
  k.support_radius = j.at("support_radius").get<double>();
  k.jitter_rel = j.at("jitter_rel").get<double>();
  return k;
}

}  // namespace

json dataset_to_json(const ClusterDataset& ds) {
  json j;
  j["kernel"] = kernel_to_json(ds.kernel);
  j["plant_id"] = ds.plant_id;
  j["seed"] = ds.seed;
  j["escaped_count"] = ds.escaped_count;
  json clusters = json::array();
  for (const Cluster& c : ds.clusters) {
    json triplets = json::array();
    for (int s = 0; s < c.size(); ++s)
      triplets.push_back(json::array({vec_to_json(c.x.row(s).transpose()),
                                      vec_to_json(c.u.row(s).transpose()),
                                      vec_to_json(c.x_plus.row(s).transpose())}));
    clusters.push_back(json{{"center", vec_to_json(c.center)},
                            {"radius", c.radius},
                            {"triplets", std::move(triplets)}});
  }
  j["clusters"] = std::move(clusters);
  return j;
}

ClusterDataset dataset_from_json(const json& j) {
  ClusterDataset ds;
  ds.kernel = kernel_from_json(j.at("kernel"));
  ds.plant_id = j.at("plant_id").get<std::string>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  ds.escaped_count = j.value("escaped_count", 0);
  for (const json& jc : j.at("clusters")) {
    Cluster c;
    c.center = vec_from_json(jc.at("center"));
    c.radius = jc.at("radius").get<double>();
    const json& trip = jc.at("triplets");
    const int count = static_cast<int>(trip.size());
    if (count == 0) throw std::invalid_argument("dataset_from_json: empty cluster");
    const int n = static_cast<int>(trip[0][0].size());
    const int m = static_cast<int>(trip[0][1].size());
    c.x.resize(count, n);
    c.u.resize(count, m);
    c.x_plus.resize(count, n);
    for (int s = 0; s < count; ++s) {
      c.x.row(s) = vec_from_json(trip[s][0]).transpose();
      c.u.row(s) = vec_from_json(trip[s][1]).transpose();
      c.x_plus.row(s) = vec_from_json(trip[s][2]).transpose();
    }
    ds.clusters.push_back(std::move(c));
  }
  return ds;
}

std::string dataset_hash(const ClusterDataset& ds) { return sha256_hex(dataset_to_json(ds).dump()); }

}  // namespace kmpc
