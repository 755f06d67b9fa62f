#pragma once

#include <cstdint>
#include <vector>

#include "ldcoh/ensemble.hpp"

namespace ldcoh_test {

// Self-contained restatement of the transport model used to cross-check the
// solvers. Positions, presence, periods and step lengths are copied out of
// the ensemble once; everything else (minimum-image metric, hop costs, path
// enumeration) is written here from scratch so the two implementations share
// no model logic.
struct OracleInstance {
  int num_traj = 0;
  int num_steps = 0;
  int dim = 0;
  double alpha = 0.5;
  std::vector<double> period;    // per axis, 0 = aperiodic
  std::vector<double> tau;       // num_steps entries
  std::vector<uint8_t> present;  // k * num_traj + i
  std::vector<double> pos;       // (k * num_traj + i) * dim + d
};

OracleInstance oracle_capture(const ldcoh::TrajectoryEnsemble& e, double alpha);

// Cheapest itinerary cost from src to every trajectory by exhaustive
// enumeration of all label sequences; +inf where no valid itinerary exists.
// Feasible only for small instances (num_traj^(num_steps+1) sequences).
std::vector<double> oracle_rates(const OracleInstance& o, int src);

// Random gappy ensembles for property tests. Trajectory count is in
// [2, max_traj], steps in [1, max_steps], dimension in [1, max_dim]; labels
// are deliberately non-contiguous. Only a data generator: no model logic.
ldcoh::TrajectoryEnsemble random_ensemble(uint64_t seed, int max_traj, int max_steps,
                                          int max_dim, bool allow_missing,
                                          bool allow_periodic);

}  // namespace ldcoh_test
