#include "ldcoh/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "ldcoh/common.hpp"

namespace ldcoh {

int TrajectoryEnsemble::label_index(int64_t label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return -1;
  return static_cast<int>(it - labels_.begin());
}

bool TrajectoryEnsemble::ever_present(int i) const {
  for (int k = 0; k < grid_.num_slices(); ++k)
    if (present_[idx(i, k)]) return true;
  return false;
}

EnsembleBuilder::EnsembleBuilder(Geometry geom, TimeGrid grid,
                                 std::vector<int64_t> labels) {
  geom.validate();
  if (labels.empty()) throw ValidationError("ensemble: no trajectories");
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ValidationError("ensemble: duplicate trajectory label");
  e_.geom_ = std::move(geom);
  e_.grid_ = std::move(grid);
  e_.labels_ = std::move(labels);
  e_.num_traj_ = static_cast<int>(e_.labels_.size());
  size_t slots = static_cast<size_t>(e_.grid_.num_slices()) * e_.num_traj_;
  e_.pos_.assign(slots * e_.geom_.dim, 0.0);
  e_.present_.assign(slots, 0);
}

EnsembleBuilder& EnsembleBuilder::set(int64_t label, int k,
                                      std::span<const double> x) {
  if (built_) throw ValidationError("ensemble builder: already built");
  int i = e_.label_index(label);
  if (i < 0)
    throw ValidationError("ensemble: unknown trajectory label " + std::to_string(label));
  if (k < 0 || k >= e_.grid_.num_slices())
    throw ValidationError("ensemble: time index out of range");
  if (static_cast<int>(x.size()) != e_.geom_.dim)
    throw ValidationError("ensemble: coordinate count does not match dimension");
  size_t slot = static_cast<size_t>(k) * e_.num_traj_ + i;
  if (e_.present_[slot])
    throw ValidationError("ensemble: duplicate sample for trajectory " +
                          std::to_string(label) + " at time index " + std::to_string(k));
  for (int d = 0; d < e_.geom_.dim; ++d) {
    double v = x[d];
    if (!std::isfinite(v))
      throw ValidationError("ensemble: non-finite coordinate for trajectory " +
                            std::to_string(label));
    e_.pos_[slot * e_.geom_.dim + d] = e_.geom_.wrap(d, v);
  }
  e_.present_[slot] = 1;
  return *this;
}

EnsembleBuilder& EnsembleBuilder::set(int64_t label, int k,
                                      std::initializer_list<double> x) {
  return set(label, k, std::span<const double>(x.begin(), x.size()));
}

TrajectoryEnsemble EnsembleBuilder::build() {
  if (built_) throw ValidationError("ensemble builder: already built");
  built_ = true;
  const int I = e_.num_traj_;
  const int S = e_.grid_.num_slices();

  e_.present_at_.resize(S);
  e_.slice_full_.assign(S, 0);
  for (int k = 0; k < S; ++k) {
    auto& lst = e_.present_at_[k];
    for (int i = 0; i < I; ++i)
      if (e_.present_[static_cast<size_t>(k) * I + i]) lst.push_back(i);
    if (lst.empty())
      throw ValidationError("ensemble: no trajectory present at time index " +
                            std::to_string(k) + "; drop the slice");
    e_.slice_full_[k] = static_cast<int>(lst.size()) == I;
  }
  for (int i = 0; i < I; ++i)
    if (!e_.ever_present(i))
      throw ValidationError("ensemble: trajectory " + std::to_string(e_.labels_[i]) +
                            " has no samples");

  e_.flow_pairs_.resize(S - 1);
  for (int k = 0; k + 1 < S; ++k) {
    auto& f = e_.flow_pairs_[k];
    for (int i = 0; i < I; ++i)
      if (e_.present_[static_cast<size_t>(k) * I + i] &&
          e_.present_[static_cast<size_t>(k + 1) * I + i])
        f.push_back(i);
  }

  Fnv1a h;
  h.update_i64(e_.geom_.dim);
  for (const auto& p : e_.geom_.periods) {
    h.update_u64(p.has_value());
    h.update_f64(p.value_or(0.0));
  }
  h.update_i64(S);
  for (double t : e_.grid_.times()) h.update_f64(t);
  h.update_i64(I);
  for (int64_t l : e_.labels_) h.update_i64(l);
  h.update(e_.present_.data(), e_.present_.size());
  for (int k = 0; k < S; ++k)
    for (int i : e_.present_at_[k])
      for (int d = 0; d < e_.geom_.dim; ++d)
        h.update_f64(e_.pos_[(static_cast<size_t>(k) * I + i) * e_.geom_.dim + d]);
  e_.checksum_ = h.digest();

  return std::move(e_);
}

}  // namespace ldcoh
