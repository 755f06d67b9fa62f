#pragma once

#include <optional>
#include <span>
#include <vector>

namespace ldcoh {

// Spatial domain descriptor: dimension plus an optional period per axis.
// Periodic axes use minimum-image displacements; coordinates on them are
// stored wrapped into [0, period).
struct Geometry {
  int dim = 1;
  std::vector<std::optional<double>> periods;  // size dim once validated

  Geometry() = default;
  Geometry(int d, std::vector<std::optional<double>> p);
  explicit Geometry(int d) : Geometry(d, {}) {}

  bool any_periodic() const;
  void validate() const;

  // Wraps coordinate x on axis d into [0, period); identity on aperiodic axes.
  double wrap(int d, double x) const;

  // Squared Euclidean distance with minimum image on periodic axes.
  // Both points must already be wrapped.
  double squared_displacement(std::span<const double> a, std::span<const double> b) const;
};

}  // namespace ldcoh
