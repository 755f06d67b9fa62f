#pragma once

#include "ldcoh/common.hpp"

namespace ldcoh {

inline constexpr int kMaxFlowDim = 4;

// One classical Runge-Kutta step of size h at time t; y is updated in place.
// Field signature: f(t, y, dydt).
template <class Field>
void rk4_step(Field&& f, int dim, double t, double h, double* y) {
  double k1[kMaxFlowDim], k2[kMaxFlowDim], k3[kMaxFlowDim], k4[kMaxFlowDim];
  double tmp[kMaxFlowDim];
  f(t, y, k1);
  for (int d = 0; d < dim; ++d) tmp[d] = y[d] + 0.5 * h * k1[d];
  f(t + 0.5 * h, tmp, k2);
  for (int d = 0; d < dim; ++d) tmp[d] = y[d] + 0.5 * h * k2[d];
  f(t + 0.5 * h, tmp, k3);
  for (int d = 0; d < dim; ++d) tmp[d] = y[d] + h * k3[d];
  f(t + h, tmp, k4);
  for (int d = 0; d < dim; ++d)
    y[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
}

// Fixed-step integration from t0 to t1 with the given substep count.
template <class Field>
void rk4_integrate(Field&& f, int dim, double t0, double t1, int substeps,
                   const double* x0, double* out) {
  if (substeps < 1) throw ValidationError("integrator: substeps must be >= 1");
  if (dim < 1 || dim > kMaxFlowDim)
    throw ValidationError("integrator: unsupported dimension");
  double y[kMaxFlowDim];
  for (int d = 0; d < dim; ++d) y[d] = x0[d];
  const double h = (t1 - t0) / substeps;
  for (int s = 0; s < substeps; ++s) rk4_step(f, dim, t0 + s * h, h, y);
  for (int d = 0; d < dim; ++d) out[d] = y[d];
}

}  // namespace ldcoh
