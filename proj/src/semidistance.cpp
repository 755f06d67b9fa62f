#include "ldcoh/semidistance.hpp"

#include <cmath>
#include <limits>

#include "ldcoh/common.hpp"
#include "ldcoh/parallel.hpp"

namespace ldcoh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rates(const RateMatrix& r) {
  if (r.meta.kind != MatrixKind::one_way)
    throw ValidationError("semidistance: input must be one_way rates");
  const size_t n = static_cast<size_t>(r.meta.n);
  if (n == 0 || r.values.size() != n * n)
    throw ValidationError("semidistance: malformed rate matrix");
  for (size_t i = 0; i < n; ++i)
    if (r.values[i * n + i] != 0.0)
      throw ValidationError("semidistance: one-way rates must have a zero diagonal");
}
}  // namespace

SemidistanceMatrix cross_from_rates(const RateMatrix& r) {
  check_rates(r);
  const int n = r.meta.n;
  SemidistanceMatrix s;
  s.meta = r.meta;
  s.meta.kind = MatrixKind::cross;
  s.values.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v = r.at(i, j) + r.at(j, i);
      s.at(i, j) = v;
      s.at(j, i) = v;
    }
  }
  return s;
}

SemidistanceMatrix meet_from_rates(const RateMatrix& r, int workers) {
  check_rates(r);
  const int n = r.meta.n;
  SemidistanceMatrix s;
  s.meta = r.meta;
  s.meta.kind = MatrixKind::meet;
  s.values.assign(static_cast<size_t>(n) * n, 0.0);
  s.meet_via.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) s.meet_via[static_cast<size_t>(i) * n + i] = i;

  parallel_for(n, workers, [&](int64_t i) {
    const double* ri = r.values.data() + i * n;
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      const double* rj = r.values.data() + static_cast<size_t>(j) * n;
      double best = kInf;
      int32_t via = -1;
      for (int l = 0; l < n; ++l) {
        double v = ri[l] + rj[l];
        if (v < best) {
          best = v;
          via = l;
        }
      }
      s.at(static_cast<int>(i), j) = best;
      s.at(j, static_cast<int>(i)) = best;
      s.meet_via[i * n + j] = via;
      s.meet_via[static_cast<size_t>(j) * n + i] = via;
    }
  });
  return s;
}

SemidistanceMatrix l2_matrix(const TrajectoryEnsemble& e, int workers) {
  const int n = e.num_trajectories();
  const int K = e.num_steps();
  const Geometry& g = e.geometry();
  SemidistanceMatrix s;
  s.meta.kind = MatrixKind::l2;
  s.meta.n = n;
  s.meta.num_steps = K;
  s.meta.alpha = 0.5;
  s.meta.mean_tau = e.grid().mean_tau();
  s.meta.ensemble_checksum = e.checksum();
  s.meta.labels = e.labels();
  s.values.assign(static_cast<size_t>(n) * n, 0.0);

  parallel_for(n, workers, [&](int64_t i) {
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      double acc = 0.0;
      bool joint = false;
      for (int k = 0; k < K; ++k) {  // terminal slice intentionally excluded
        if (!e.is_present(static_cast<int>(i), k) || !e.is_present(j, k)) continue;
        joint = true;
        double d2 = g.squared_displacement(e.position(static_cast<int>(i), k),
                                           e.position(j, k));
        acc += d2 / (2.0 * e.grid().tau(k));
      }
      double v = joint ? acc : kInf;
      s.at(static_cast<int>(i), j) = v;
      s.at(j, static_cast<int>(i)) = v;
    }
  });
  return s;
}

AxiomReport axiom_check(const SemidistanceMatrix& s, const RateMatrix* rates) {
  AxiomReport rep;
  const int n = s.meta.n;
  if (n <= 0 || s.values.size() != static_cast<size_t>(n) * n) {
    rep.fail("matrix is not square");
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (!(s.at(i, i) == 0.0))
      rep.fail("nonzero diagonal at " + std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      double a = s.at(i, j), b = s.at(j, i);
      bool eq = (a == b) || (std::isinf(a) && std::isinf(b) && a == b);
      if (!eq) rep.fail("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::isnan(a) || a < 0.0)
        rep.fail("negative or NaN entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (a == 0.0)
        rep.fail("zero semidistance between distinct trajectories (" + std::to_string(i) +
                 "," + std::to_string(j) + ")");
    }
  }
  if (rates) {
    if (rates->meta.n != n) {
      rep.fail("rate matrix size mismatch");
      return rep;
    }
    const bool is_meet = s.meta.kind == MatrixKind::meet;
    const bool is_cross = s.meta.kind == MatrixKind::cross;
    if (!is_meet && !is_cross) rep.fail("chain check needs a cross or meet matrix");
    for (int i = 0; i < n && (is_meet || is_cross); ++i) {
      for (int j = i + 1; j < n; ++j) {
        double lo = std::min(rates->at(i, j), rates->at(j, i));
        double hi = std::max(rates->at(i, j), rates->at(j, i));
        if (is_meet && !(s.at(i, j) <= lo))
          rep.fail("meet exceeds one-way minimum at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")");
        if (is_cross && !(hi <= s.at(i, j)))
          rep.fail("one-way maximum exceeds cross at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")");
      }
    }
  }
  return rep;
}

}  // namespace ldcoh
