#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kmpc/kernel.hpp"
#include "kmpc/plant.hpp"
#include "kmpc/types.hpp"

namespace kmpc {

// Data triplets (x_ij, u_ij, x+_ij) collected in a ball around one virtual
// observation point. Rows of x/u/x_plus are samples.
struct Cluster {
  Vec center;
  double radius = 0.0;
  Mat x;       // d_i x n
  Mat u;       // d_i x m
  Mat x_plus;  // d_i x n

  int size() const { return static_cast<int>(x.rows()); }
};

struct ClusterDataset {
  KernelSpec kernel;
  std::string plant_id;
  std::uint64_t seed = 0;
  std::vector<Cluster> clusters;
  int escaped_count = 0;  // successors outside Omega (kept, counted)

  int size() const { return static_cast<int>(clusters.size()); }
  Mat centers() const;
};

// The (degree+1)(degree+2)/2 Padua points of the given degree on [-1,1]^2,
// affinely mapped into the box. Rows are points.
Mat padua_points(int degree, const Box& box);

// Padua grid with the origin prepended as the first point; a Padua point
// within 1e-12 of the origin is dropped first.
Mat build_observation_grid(int degree, const Box& box);

// Inverts (deg+1)(deg+2)/2 + 1 = d; throws for non-realizable d, naming the
// two nearest realizable totals.
int padua_degree_for_count(int total_points);

// Samples per-cluster triplets: x_ij uniform on B_r(x_i) intersected with
// Omega, u_ij uniform on U, successors from the plant. Inputs are resampled
// (up to 100 times) until rank(V_i) = m+1 with sigma_min >= 1e-6.
// Reproducible: per-cluster streams derived from the seed.
ClusterDataset build_cluster_dataset(const Plant& plant, const Mat& centers, double radius,
                                     int samples_per_cluster, std::uint64_t seed,
                                     const KernelSpec& kernel_record = {});

// V_i = [1 ... 1; u_i1 ... u_id], shape (m+1) x d_i.
Mat regression_matrix(const Cluster& cluster);

double smallest_singular_value(const Mat& M);

// Grid approximation of sup_{x in Omega} min_i |x - x_i| with the given
// grid step; a lower bound converging as resolution -> 0.
double fill_distance(const Mat& nodes, const Box& omega, double resolution);

nlohmann::ordered_json dataset_to_json(const ClusterDataset& ds);
ClusterDataset dataset_from_json(const nlohmann::ordered_json& j);
std::string dataset_hash(const ClusterDataset& ds);

}  // namespace kmpc
