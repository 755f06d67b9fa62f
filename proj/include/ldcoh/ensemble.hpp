#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldcoh/geometry.hpp"
#include "ldcoh/time_grid.hpp"

namespace ldcoh {

// A set of I trajectories sampled on a shared time grid. Trajectories may be
// missing at individual slices (gappy observations); a missing sample is
// simply absent, there is no placeholder value. Storage is slice-major so a
// whole time slice is contiguous.
class TrajectoryEnsemble {
 public:
  TrajectoryEnsemble() = default;

  int num_trajectories() const { return num_traj_; }
  int num_steps() const { return grid_.num_steps(); }
  int dim() const { return geom_.dim; }
  const Geometry& geometry() const { return geom_; }
  const TimeGrid& grid() const { return grid_; }

  // External trajectory ids, ascending; internal index i maps to labels()[i].
  const std::vector<int64_t>& labels() const { return labels_; }
  int label_index(int64_t label) const;  // -1 if unknown

  bool is_present(int i, int k) const { return present_[idx(i, k)] != 0; }
  bool ever_present(int i) const;

  // Position of trajectory i at slice k; only valid when present.
  std::span<const double> position(int i, int k) const {
    return {pos_.data() + (static_cast<size_t>(k) * num_traj_ + i) * geom_.dim,
            static_cast<size_t>(geom_.dim)};
  }
  const double* slice_ptr(int k) const {
    return pos_.data() + static_cast<size_t>(k) * num_traj_ * geom_.dim;
  }

  // Indices present at slice k, ascending.
  const std::vector<int32_t>& present_at(int k) const { return present_at_[k]; }
  // Indices present at both ends of step k: the admissible hop intermediaries.
  const std::vector<int32_t>& flow_pairs(int k) const { return flow_pairs_[k]; }
  bool slice_full(int k) const { return slice_full_[k] != 0; }

  // Fingerprint of geometry, grid, labels, presence and coordinates.
  uint64_t checksum() const { return checksum_; }

 private:
  size_t idx(int i, int k) const { return static_cast<size_t>(k) * num_traj_ + i; }

  Geometry geom_;
  TimeGrid grid_;
  int num_traj_ = 0;
  std::vector<int64_t> labels_;
  std::vector<double> pos_;       // ((k * I) + i) * dim + d
  std::vector<uint8_t> present_;  // k * I + i
  std::vector<std::vector<int32_t>> present_at_;
  std::vector<std::vector<int32_t>> flow_pairs_;
  std::vector<uint8_t> slice_full_;
  uint64_t checksum_ = 0;

  friend class EnsembleBuilder;
};

// Assembles an ensemble sample by sample, then validates: every slice must
// retain at least one trajectory, every trajectory at least one sample, and
// periodic coordinates are wrapped into canonical range.
class EnsembleBuilder {
 public:
  EnsembleBuilder(Geometry geom, TimeGrid grid, std::vector<int64_t> labels);

  // Labels are external ids; k indexes the grid slices. Duplicate samples are
  // rejected at build time.
  EnsembleBuilder& set(int64_t label, int k, std::span<const double> x);
  EnsembleBuilder& set(int64_t label, int k, std::initializer_list<double> x);

  TrajectoryEnsemble build();

 private:
  TrajectoryEnsemble e_;
  bool built_ = false;
};

}  // namespace ldcoh
