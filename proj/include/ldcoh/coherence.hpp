#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ldcoh/rate_matrix.hpp"

namespace ldcoh {

// Farthest-point cornerstone search on a semidistance matrix.
//
// A throwaway seed c0 (user-chosen or drawn from `seed`) anchors the first
// pick: c_1 maximises d(., c0). From then on c0 is dropped and
// c_{q+1} maximises the distance to the set {c_1..c_q}. Each objective
// value v_q is recorded in search order; the search always runs to max_q.
// The stopping rule only annotates: the suggestion is q-1 for the first q
// with v_q < v_{q-1} / stop_factor.
struct CornerstoneOptions {
  int max_q = 8;
  std::optional<int32_t> c0;  // index into the matrix; random when absent
  uint64_t seed = 0;
  double stop_factor = 2.0;
};

struct CornerstoneResult {
  int32_t c0 = -1;
  std::vector<int32_t> cornerstones;  // c_1..c_max_q, matrix indices
  std::vector<double> objectives;     // v_1..v_max_q
  std::optional<int> suggested_q;     // from the stopping rule, if it fired
  uint64_t seed = 0;
  double stop_factor = 2.0;
};

CornerstoneResult find_cornerstones(const SemidistanceMatrix& d,
                                    const CornerstoneOptions& opt);

// Nearest-cornerstone assignment; ties go to the lowest cornerstone rank.
// Returns one entry per trajectory, the index into `cornerstones`.
std::vector<int32_t> hard_clusters(const SemidistanceMatrix& d,
                                   const std::vector<int32_t>& cornerstones);

// Fuzzy-membership weights with fuzzifier m > 1:
//   u_q(j) proportional to d(c_q, j)^(-2/(m-1)), normalised over q.
// A trajectory at distance zero from some cornerstone is crisply assigned to
// the lowest-ranked such cornerstone. Columns sum to one.
struct AffiliationMatrix {
  double m = 2.0;
  int32_t num_cornerstones = 0;
  int32_t num_trajectories = 0;
  std::vector<double> values;  // row q, column j
  double at(int q, int j) const {
    return values[static_cast<size_t>(q) * num_trajectories + j];
  }
};

AffiliationMatrix fuzzy_affiliations(const SemidistanceMatrix& d,
                                     const std::vector<int32_t>& cornerstones,
                                     double m);

}  // namespace ldcoh
