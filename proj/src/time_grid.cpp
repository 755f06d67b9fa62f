#include "ldcoh/time_grid.hpp"

#include <cmath>

#include "ldcoh/common.hpp"

namespace ldcoh {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2)
    throw ValidationError("time grid: need at least two observation times");
  for (size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]))
      throw ValidationError("time grid: non-finite time value");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw ValidationError("time grid: times must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double t0, int num_steps, double tau) {
  if (num_steps < 1) throw ValidationError("time grid: need at least one step");
  if (!(tau > 0.0)) throw ValidationError("time grid: tau must be positive");
  std::vector<double> ts(num_steps + 1);
  for (int i = 0; i <= num_steps; ++i) ts[i] = t0 + i * tau;
  return TimeGrid(std::move(ts));
}

double TimeGrid::mean_tau() const {
  return (times_.back() - times_.front()) / num_steps();
}

}  // namespace ldcoh
