#pragma once

#include <memory>
#include <string>

#include "kmpc/types.hpp"

namespace kmpc {

// Discrete-time plant x+ = f(x,u) with a controlled equilibrium at the
// origin, state constraint set S inside the sampling domain Omega, and
// input constraint set U.
class Plant {
 public:
  Plant(int n, int m, Box state, Box sampling, Box input)
      : state_box(std::move(state)), sampling_box(std::move(sampling)),
        input_box(std::move(input)), n_(n), m_(m) {}
  virtual ~Plant() = default;

  int state_dim() const { return n_; }
  int input_dim() const { return m_; }
  virtual Vec step(const Vec& x, const Vec& u) const = 0;
  virtual std::string id() const = 0;

  Box state_box;     // S
  Box sampling_box;  // Omega
  Box input_box;     // U

 private:
  int n_;
  int m_;
};

// Euler discretization of the controlled van der Pol oscillator,
//   x+ = x + dt * (x2, nu (1 - x1^2) x2 - x1 + u).
class VanDerPolPlant final : public Plant {
 public:
  explicit VanDerPolPlant(double dt = 0.05, double nu = 0.1,
                          double omega_half = 2.0, double state_half = 1.9,
                          double input_half = 2.0)
      : Plant(2, 1, Box::cube(2, -state_half, state_half), Box::cube(2, -omega_half, omega_half),
              Box::cube(1, -input_half, input_half)),
        dt_(dt), nu_(nu) {}

  Vec step(const Vec& x, const Vec& u) const override {
    Vec next(2);
    next[0] = x[0] + dt_ * x[1];
    next[1] = x[1] + dt_ * (nu_ * (1.0 - x[0] * x[0]) * x[1] - x[0] + u[0]);
    return next;
  }

  std::string id() const override { return "vdp"; }

  double dt() const { return dt_; }
  double nu() const { return nu_; }

 private:
  double dt_;
  double nu_;
};

}  // namespace kmpc
