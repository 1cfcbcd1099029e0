#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "kmpc/types.hpp"

namespace kmpc {

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// standard *distributions* are not, so all conversions are done by hand to
// keep datasets bit-identical across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  Vec uniform_in_box(const Box& box) {
    Vec x(box.dim());
    for (int i = 0; i < box.dim(); ++i) x[i] = uniform(box.lo[i], box.hi[i]);
    return x;
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // polar Box-Muller
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    have_cached_ = true;
    return u * f;
  }

  Vec normal_vec(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = normal();
    return x;
  }

  // Uniform point in the closed n-ball of given radius around center.
  Vec ball_point(const Vec& center, double radius) {
    const int n = static_cast<int>(center.size());
    if (radius == 0.0) return center;
    Vec dir = normal_vec(n);
    double nrm = dir.norm();
    while (nrm == 0.0) {
      dir = normal_vec(n);
      nrm = dir.norm();
    }
    const double r = radius * std::pow(uniform01(), 1.0 / n);
    return center + (r / nrm) * dir;
  }

  // splitmix64 mix; used to derive independent per-cluster streams so that
  // parallel generation is schedule-independent.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace kmpc
