#include "kmpc/model.hpp"

namespace kmpc {

Mat DynamicsModel::jacobian_x(const Vec& x, const Vec& u) const {
  const int n = state_dim();
  const double h = 1e-6 * std::max(1.0, x.norm());
  Mat A(n, n);
  Vec xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    A.col(j) = (predict(xp, u) - predict(xm, u)) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return A;
}

Mat DynamicsModel::jacobian_u(const Vec& x, const Vec& u) const {
  const int n = state_dim();
  const int m = input_dim();
  const double h = 1e-6 * std::max(1.0, u.norm());
  Mat B(n, m);
  Vec up = u, um = u;
  for (int j = 0; j < m; ++j) {
    up[j] = u[j] + h;
    um[j] = u[j] - h;
    B.col(j) = (predict(x, up) - predict(x, um)) / (2.0 * h);
    up[j] = u[j];
    um[j] = u[j];
  }
  return B;
}

}  // namespace kmpc
