#pragma once

#include <vector>

namespace ldcoh {

// Strictly increasing observation times t_0 < ... < t_K. Steps need not be
// uniform; tau(k) = t_{k+1} - t_k.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> times);
  static TimeGrid uniform(double t0, int num_steps, double tau);

  int num_steps() const { return static_cast<int>(times_.size()) - 1; }
  int num_slices() const { return static_cast<int>(times_.size()); }
  double time(int k) const { return times_[k]; }
  double tau(int k) const { return times_[k + 1] - times_[k]; }
  const std::vector<double>& times() const { return times_; }

  // Arithmetic mean of the step lengths; the scale used by the per-tau
  // reporting unit.
  double mean_tau() const;

 private:
  std::vector<double> times_;
};

}  // namespace ldcoh
