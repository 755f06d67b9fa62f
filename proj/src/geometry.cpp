#include "ldcoh/geometry.hpp"

#include <cmath>

#include "ldcoh/common.hpp"

namespace ldcoh {

Geometry::Geometry(int d, std::vector<std::optional<double>> p)
    : dim(d), periods(std::move(p)) {
  if (periods.empty()) periods.resize(dim);
  validate();
}

bool Geometry::any_periodic() const {
  for (const auto& p : periods)
    if (p) return true;
  return false;
}

void Geometry::validate() const {
  if (dim < 1) throw ValidationError("geometry: dimension must be >= 1");
  if (static_cast<int>(periods.size()) != dim)
    throw ValidationError("geometry: need one (possibly empty) period per axis");
  for (const auto& p : periods) {
    if (p && (!(*p > 0.0) || !std::isfinite(*p)))
      throw ValidationError("geometry: periods must be finite and positive");
  }
}

double Geometry::wrap(int d, double x) const {
  const auto& p = periods[d];
  if (!p) return x;
  if (x >= 0.0 && x < *p) return x;  // idempotent on canonical values
  double r = std::fmod(x, *p);
  if (r < 0.0) r += *p;
  if (r >= *p) r = 0.0;  // fmod can land exactly on the period after the add
  return r;
}

double Geometry::squared_displacement(std::span<const double> a,
                                      std::span<const double> b) const {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    double dx = a[d] - b[d];
    if (periods[d]) {
      dx = std::fabs(dx);
      double alt = *periods[d] - dx;
      if (alt < dx) dx = alt;
    }
    s += dx * dx;
  }
  return s;
}

}  // namespace ldcoh
