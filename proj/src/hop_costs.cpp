#include "ldcoh/hop_costs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ldcoh/common.hpp"

namespace ldcoh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_present(const TrajectoryEnsemble& e, int i, int k) {
  if (i < 0 || i >= e.num_trajectories())
    throw ValidationError("hop cost: trajectory index out of range");
  if (k < 0 || k >= e.grid().num_slices())
    throw ValidationError("hop cost: time index out of range");
  if (!e.is_present(i, k))
    throw ValidationError("hop cost: trajectory " + std::to_string(e.labels()[i]) +
                          " absent at time index " + std::to_string(k));
}
}  // namespace

HopCostModel::HopCostModel(const TrajectoryEnsemble& e, double alpha)
    : e_(&e), alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw ValidationError("hop cost: alpha must lie strictly between 0 and 1");
}

double HopCostModel::pre_hop_cost(int k, int i, int l) const {
  require_present(*e_, i, k);
  require_present(*e_, l, k);
  double d2 = e_->geometry().squared_displacement(e_->position(l, k), e_->position(i, k));
  return d2 / (2.0 * alpha_ * e_->grid().tau(k));
}

double HopCostModel::post_hop_cost(int k, int l, int j) const {
  require_present(*e_, l, k + 1);
  require_present(*e_, j, k + 1);
  double d2 = e_->geometry().squared_displacement(e_->position(j, k + 1), e_->position(l, k + 1));
  return d2 / (2.0 * (1.0 - alpha_) * e_->grid().tau(k));
}

HopCostModel::StepCost HopCostModel::step_cost(int k, int i, int j) const {
  require_present(*e_, i, k);
  require_present(*e_, j, k + 1);
  StepCost best{kInf, -1};
  for (int32_t l : e_->flow_pairs(k)) {
    double c = pre_hop_cost(k, i, l) + post_hop_cost(k, l, j);
    if (c < best.cost) best = {c, l};
  }
  return best;
}

PathRecord path_cost(const HopCostModel& m, std::span<const int32_t> nodes) {
  const TrajectoryEnsemble& e = m.ensemble();
  const int K = e.num_steps();
  if (static_cast<int>(nodes.size()) != K + 1)
    throw ValidationError("path cost: itinerary must name one label per time slice");
  PathRecord r;
  r.nodes.assign(nodes.begin(), nodes.end());
  r.via.assign(K, -1);
  r.step_costs.assign(K, 0.0);
  for (int k = 0; k < K; ++k) {
    int32_t a = nodes[k], b = nodes[k + 1];
    if (a < 0 || a >= e.num_trajectories() || b < 0 || b >= e.num_trajectories())
      throw ValidationError("path cost: trajectory index out of range");
    if (a == b) continue;  // riding is free, observed or not
    auto sc = m.step_cost(k, a, b);
    if (!std::isfinite(sc.cost))
      throw ValidationError("path cost: no trajectory spans step " + std::to_string(k));
    r.via[k] = sc.via;
    r.step_costs[k] = sc.cost;
  }
  for (int k = 0; k < K; ++k) r.total += r.step_costs[k];
  return r;
}

}  // namespace ldcoh
