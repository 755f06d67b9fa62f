#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldcoh/ensemble.hpp"

namespace ldcoh {

enum class FlowVariant {
  zero_flow,
  double_gyre,
  rotating_double_gyre,
  bickley_jet,
  map_two_mixing,
  map_static_mixing_static,
};

const char* flow_variant_name(FlowVariant v);
FlowVariant flow_variant_from_name(const std::string& name);

// A benchmark dynamical system: either a continuous velocity field or a
// discrete interval map, together with its spatial domain.
struct FlowSpec {
  FlowVariant variant = FlowVariant::zero_flow;
  // double_gyre only: amplitude, gyre wobble and angular frequency.
  double amplitude = 0.25;
  double wobble = 0.25;
  double omega = 2.0 * 3.14159265358979323846;

  std::vector<double> lo, hi;                   // domain box, one entry per axis
  std::vector<std::optional<double>> periods;   // periodic axes

  static FlowSpec make(FlowVariant v);
  bool is_map() const;
  int dim() const { return static_cast<int>(lo.size()); }
  Geometry geometry() const;
};

// Velocity of a continuous flow at (t, x); out has dim() entries.
void velocity(const FlowSpec& f, double t, const double* x, double* out);
// Stream function of a continuous 2-d flow (velocity = (-d/dy, d/dx) psi).
double stream_function(const FlowSpec& f, double t, const double* x);
// One application of a discrete map.
void map_apply(const FlowSpec& f, const double* x, double* out);

struct IntegratorConfig {
  int substeps = 10;  // classical RK4 steps per observation interval
};

// Integrates a continuous flow from (t0, x) to t1; periodic axes are wrapped
// after every substep. The domain box constrains seeding only: orbits may
// leave it, and the fields are smooth on all of R^d.
void advect(const FlowSpec& f, double t0, double t1, const double* x,
            const IntegratorConfig& cfg, double* out);

// Seed layouts for ensemble generation.
struct SeedSpec {
  enum class Kind { grid, explicit_points, random } kind = Kind::grid;
  std::vector<int> counts;            // grid: cells per axis (cell-centred)
  std::vector<std::vector<double>> points;  // explicit_points
  int n = 0;                          // random
  uint64_t seed = 0;                  // random

  static SeedSpec grid(std::vector<int> counts);
  static SeedSpec explicit_points(std::vector<std::vector<double>> pts);
  static SeedSpec random(int n, uint64_t seed);
};

std::vector<std::vector<double>> make_seeds(const FlowSpec& f, const SeedSpec& s);

// Runs every seed through the flow (or map) across the grid; trajectory
// labels are 1..I in seed order. Maps require a unit-step integer grid.
TrajectoryEnsemble generate_ensemble(const FlowSpec& f, const SeedSpec& seeds,
                                     const TimeGrid& grid,
                                     const IntegratorConfig& cfg = {},
                                     int workers = 0);

}  // namespace ldcoh
