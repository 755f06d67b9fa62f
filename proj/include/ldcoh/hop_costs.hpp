#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldcoh/ensemble.hpp"

namespace ldcoh {

// Cost of switching trajectories during step k (slice k -> slice k+1).
// A hop from i to j routes through an intermediary l that is present at both
// ends of the step: pay (alpha-weighted) squared displacement to reach l at
// slice k, ride l across the step for free, then pay the remainder to reach j
// at slice k+1.
//
//   pre  = |x_k(l)     - x_k(i)|^2     / (2 alpha     tau_k)
//   post = |x_{k+1}(j) - x_{k+1}(l)|^2 / (2 (1-alpha) tau_k)
//
// Costs carry units length^2 / time throughout the library; any reporting
// rescale happens at the CLI layer.
class HopCostModel {
 public:
  HopCostModel(const TrajectoryEnsemble& e, double alpha);

  const TrajectoryEnsemble& ensemble() const { return *e_; }
  double alpha() const { return alpha_; }

  // Both trajectories must be present at slice k.
  double pre_hop_cost(int k, int i, int l) const;
  // Both trajectories must be present at slice k+1; tau is that of step k.
  double post_hop_cost(int k, int l, int j) const;

  struct StepCost {
    double cost;
    int32_t via;  // chosen intermediary, lowest label on ties
  };
  // min over admissible l of pre + post. Reference implementation: the
  // solvers never materialise these values pairwise. Requires i present at
  // slice k and j at slice k+1; returns +inf cost and via = -1 when no
  // trajectory spans the step.
  StepCost step_cost(int k, int i, int j) const;

 private:
  const TrajectoryEnsemble* e_;
  double alpha_;
};

// A fully expanded walker itinerary: one trajectory label index per slice.
struct PathRecord {
  std::vector<int32_t> nodes;       // size K+1
  std::vector<int32_t> via;         // size K; intermediary per step (-1 on rides)
  std::vector<double> step_costs;   // size K
  double total = 0.0;
};

// Evaluates an itinerary under the model. Staying on the same label across a
// step always costs zero (this is how a walker rides through slices where its
// label is unobserved). Switching labels requires the endpoints to be present
// and some trajectory to span the step; otherwise the itinerary is invalid.
PathRecord path_cost(const HopCostModel& m, std::span<const int32_t> nodes);

}  // namespace ldcoh
