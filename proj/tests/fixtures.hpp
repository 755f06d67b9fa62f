#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "ldcoh/ensemble.hpp"
#include "ldcoh/hop_costs.hpp"

namespace ldcoh_test {

// Three trajectories on a line at 0, 0.5 and 1, static over two unit steps,
// alpha = 1/2. Every hop cost is an exact binary fraction:
//   one step i -> i+1 costs 0.25, one step 1 -> 3 costs 0.5 (via 2),
//   so the one-way rates are [[0, .25, .5], [.25, 0, .25], [.5, .25, 0]].
inline ldcoh::TrajectoryEnsemble line3() {
  ldcoh::EnsembleBuilder b(ldcoh::Geometry(1), ldcoh::TimeGrid::uniform(0.0, 2, 1.0),
                           {1, 2, 3});
  for (int k = 0; k <= 2; ++k) {
    b.set(1, k, {0.0});
    b.set(2, k, {0.5});
    b.set(3, k, {1.0});
  }
  return b.build();
}

// Same geometry, but trajectory 2 is unobserved at slice 0. Rates from 1 stay
// [0, .25, .5]: the hop into 2 happens one step later, and 2 still works as a
// stepping stone for 1 -> 3 on the second step.
inline ldcoh::TrajectoryEnsemble line3_gap() {
  ldcoh::EnsembleBuilder b(ldcoh::Geometry(1), ldcoh::TimeGrid::uniform(0.0, 2, 1.0),
                           {1, 2, 3});
  for (int k = 0; k <= 2; ++k) {
    b.set(1, k, {0.0});
    if (k > 0) b.set(2, k, {0.5});
    b.set(3, k, {1.0});
  }
  return b.build();
}

// Five static points spaced 0.25 apart on [0, 1] over four unit steps:
// four neighbour hops of 0.0625 each, nu(1 -> 5) = 0.25.
inline ldcoh::TrajectoryEnsemble line5() {
  ldcoh::EnsembleBuilder b(ldcoh::Geometry(1), ldcoh::TimeGrid::uniform(0.0, 4, 1.0),
                           {1, 2, 3, 4, 5});
  for (int k = 0; k <= 4; ++k)
    for (int i = 0; i < 5; ++i) b.set(i + 1, k, {0.25 * i});
  return b.build();
}

// Unique scratch directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int n = 0;; ++n) {
      auto cand = base / (tag + "." + std::to_string(::getpid()) + "." + std::to_string(n));
      std::error_code ec;
      if (std::filesystem::create_directory(cand, ec)) {
        path = cand;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ldcoh_test
