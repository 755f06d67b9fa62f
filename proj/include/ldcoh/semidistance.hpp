#pragma once

#include <string>
#include <vector>

#include "ldcoh/ensemble.hpp"
#include "ldcoh/rate_matrix.hpp"

namespace ldcoh {

// Symmetrisations of the one-way rate matrix.
//
// cross(i,j) = r(i,j) + r(j,i): walkers exchanged both ways.
// meet(i,j)  = min over l of r(i,l) + r(j,l): both walkers converge on the
//              cheapest meeting trajectory, recorded per pair.
//
// Both are semidistances: symmetric, non-negative, zero diagonal; the
// triangle inequality is not guaranteed and not claimed.
SemidistanceMatrix cross_from_rates(const RateMatrix& r);
SemidistanceMatrix meet_from_rates(const RateMatrix& r, int workers = 0);

// Baseline: the time-summed squared separation of the two trajectories,
// sum over k < K of |x_k(i) - x_k(j)|^2 / (2 tau_k), skipping slices where
// either is missing. Pairs never jointly present get +inf.
SemidistanceMatrix l2_matrix(const TrajectoryEnsemble& e, int workers = 0);

// Structural checks on a semidistance matrix: square, zero exactly on the
// diagonal and nowhere else, exact symmetry, no negative or NaN entries; and
// when the producing one-way rates are supplied, the exact chain
//   meet(i,j) <= min(r(i,j), r(j,i)) <= max(r(i,j), r(j,i)) <= cross(i,j).
struct AxiomReport {
  bool ok = true;
  int violations = 0;
  std::string first;  // description of the first violation

  void fail(const std::string& what) {
    ++violations;
    if (ok) first = what;
    ok = false;
  }
};
AxiomReport axiom_check(const SemidistanceMatrix& s, const RateMatrix* rates = nullptr);

}  // namespace ldcoh
