#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace kmpc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown when a computed certificate fails (empty tightened sets, collapsed
// terminal set, infeasible OCP at a supposedly feasible state). The CLI maps
// this to exit code 2, plain errors to exit code 1.
class CertificateViolation : public std::runtime_error {
 public:
  explicit CertificateViolation(const std::string& what) : std::runtime_error(what) {}
};

// Axis-aligned box [lo, hi]^n.
struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box bounds dimension mismatch");
    for (int i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) throw std::invalid_argument("box with inverted interval");
  }

  static Box cube(int dim, double a, double b) {
    return Box(Vec::Constant(dim, a), Vec::Constant(dim, b));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Vec& x, double tol = 0.0) const {
    for (int i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
    return true;
  }

  // Smallest per-axis distance to a facet; negative when x is outside.
  double margin(const Vec& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lo.size(); ++i) m = std::min({m, x[i] - lo[i], hi[i] - x[i]});
    return m;
  }

  Vec clamp(const Vec& x) const {
    Vec y = x;
    for (int i = 0; i < lo.size(); ++i) y[i] = std::min(std::max(y[i], lo[i]), hi[i]);
    return y;
  }

  Vec center() const { return 0.5 * (lo + hi); }

  double min_half_width() const {
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lo.size(); ++i) w = std::min(w, 0.5 * (hi[i] - lo[i]));
    return w;
  }
};

}  // namespace kmpc
