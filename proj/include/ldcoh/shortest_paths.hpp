#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ldcoh/hop_costs.hpp"
#include "ldcoh/rate_matrix.hpp"

namespace ldcoh {

// One-way transport rates from a fixed source: dist[j] is the cheapest
// accumulated hop cost of any walker itinerary starting on the source at
// slice 0 and ending on trajectory j at slice K. Unreachable targets are
// +inf. Sources absent at slice 0 simply wait (at zero cost) until their
// trajectory first appears.
struct RateVector {
  int32_t source = -1;
  std::vector<double> dist;
};

enum class Solver {
  dense,       // two-sweep relaxation through the intermediaries, O(I^2) per step
  reached,     // reached-set label correction, processes nodes costliest-first
};

struct SolveOptions {
  Solver solver = Solver::dense;
  // Exact candidate pruning in the dense backward sweep (sort intermediaries
  // by reach value, stop once no candidate can improve). Never changes any
  // output bit; off by default.
  bool prune = false;
};

RateVector single_source_rates(const HopCostModel& m, int32_t source,
                               const SolveOptions& opt = {});

// Same solve, but also reports the running rates after the given step counts.
// snapshot_steps must be ascending, each in [1, K]; on_snapshot(k, dist)
// fires when the first k steps have been folded in, i.e. dist is the rate
// vector of the problem truncated to k steps.
void single_source_rates_snapshots(
    const HopCostModel& m, int32_t source, const SolveOptions& opt,
    std::span<const int> snapshot_steps,
    const std::function<void(int, std::span<const double>)>& on_snapshot);

// Cheapest itineraries from one source to every target, reconstructed
// alongside the distances (label-correcting pass with per-target itinerary
// prefixes). The spelled-out itinerary of target j replays to exactly the
// reported distance under path_cost. Unreachable targets get no record.
struct PathSolveResult {
  RateVector rates;
  std::vector<std::optional<PathRecord>> paths;  // indexed by target
};
PathSolveResult single_source_paths(const HopCostModel& m, int32_t source);

// All-pairs one-way rates; rows are sources, parallelised across sources.
// workers <= 0 defers to LDCOH_WORKERS, then hardware.
RateMatrix all_pairs_rates(const HopCostModel& m, const SolveOptions& opt = {},
                           int workers = 0);

// All-pairs rates for every truncated horizon in snapshot_steps (ascending,
// each in [1, K]), harvested from a single sweep per source.
std::vector<RateMatrix> all_pairs_rates_snapshots(const HopCostModel& m,
                                                  const SolveOptions& opt,
                                                  std::span<const int> snapshot_steps,
                                                  int workers = 0);

}  // namespace ldcoh
