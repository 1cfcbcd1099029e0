#pragma once

#include <utility>

#include "kmpc/plant.hpp"
#include "kmpc/types.hpp"

namespace kmpc {

// Prediction-model interface consumed by the MPC. Implemented by the kEDMD
// surrogate and, for oracle baselines, by a wrapper around the true plant.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual int state_dim() const = 0;
  virtual int input_dim() const = 0;
  virtual Vec predict(const Vec& x, const Vec& u) const = 0;

  // d predict / dx by central differences, step 1e-6 * max(1, |x|).
  virtual Mat jacobian_x(const Vec& x, const Vec& u) const;

  // d predict / du by central differences (overridden analytically where the
  // model is affine in u).
  virtual Mat jacobian_u(const Vec& x, const Vec& u) const;
};

inline std::pair<Mat, Mat> jacobians(const DynamicsModel& model, const Vec& x, const Vec& u) {
  return {model.jacobian_x(x, u), model.jacobian_u(x, u)};
}

// The true plant exposed as a prediction model (zero-error oracle).
class PlantModel final : public DynamicsModel {
 public:
  explicit PlantModel(const Plant& plant) : plant_(&plant) {}

  int state_dim() const override { return plant_->state_dim(); }
  int input_dim() const override { return plant_->input_dim(); }
  Vec predict(const Vec& x, const Vec& u) const override { return plant_->step(x, u); }

 private:
  const Plant* plant_;
};

}  // namespace kmpc
