#include "ldcoh/coherence.hpp"

#include <cmath>
#include <limits>

#include "ldcoh/common.hpp"
#include "ldcoh/rng.hpp"

namespace ldcoh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_matrix(const SemidistanceMatrix& d) {
  if (d.meta.kind == MatrixKind::one_way)
    throw ValidationError("coherence: need a symmetric semidistance matrix");
  const size_t n = static_cast<size_t>(d.meta.n);
  if (n == 0 || d.values.size() != n * n)
    throw ValidationError("coherence: malformed matrix");
}

void check_cornerstones(const SemidistanceMatrix& d,
                        const std::vector<int32_t>& cs) {
  if (cs.empty()) throw ValidationError("coherence: empty cornerstone list");
  for (int32_t c : cs)
    if (c < 0 || c >= d.meta.n)
      throw ValidationError("coherence: cornerstone index out of range");
}
}  // namespace

CornerstoneResult find_cornerstones(const SemidistanceMatrix& d,
                                    const CornerstoneOptions& opt) {
  check_matrix(d);
  const int n = d.meta.n;
  if (opt.max_q < 1 || opt.max_q >= n)
    throw ValidationError("coherence: max_q must lie in [1, n-1]");
  if (!(opt.stop_factor > 1.0))
    throw ValidationError("coherence: stop_factor must exceed 1");
  if (opt.c0 && (*opt.c0 < 0 || *opt.c0 >= n))
    throw ValidationError("coherence: c0 out of range");

  CornerstoneResult res;
  res.seed = opt.seed;
  res.stop_factor = opt.stop_factor;
  res.c0 = opt.c0 ? *opt.c0
                  : static_cast<int32_t>(uniform_index(opt.seed, 0, n));

  // min_d[i] = distance from i to the current cornerstone set; the seed is
  // dropped from the set as soon as the first real cornerstone is found.
  std::vector<double> min_d(n);
  for (int i = 0; i < n; ++i) min_d[i] = d.at(i, res.c0);

  for (int q = 1; q <= opt.max_q; ++q) {
    int32_t arg = 0;
    double best = min_d[0];
    for (int i = 1; i < n; ++i) {
      if (min_d[i] > best) {  // strict: ties keep the lowest index
        best = min_d[i];
        arg = i;
      }
    }
    res.cornerstones.push_back(arg);
    res.objectives.push_back(best);
    if (q == 1) {
      for (int i = 0; i < n; ++i) min_d[i] = d.at(i, arg);
    } else {
      for (int i = 0; i < n; ++i) {
        double v = d.at(i, arg);
        if (v < min_d[i]) min_d[i] = v;
      }
    }
    // The first objective value that falls below the previous one by more
    // than the stop factor marks the natural stopping point.  The cornerstone
    // attaining the dropped value is kept: it sits in the transition region
    // between the sets found so far, so the suggested count includes it.
    if (!res.suggested_q && q >= 2 &&
        res.objectives[q - 1] < res.objectives[q - 2] / opt.stop_factor) {
      res.suggested_q = q;
    }
  }
  return res;
}

std::vector<int32_t> hard_clusters(const SemidistanceMatrix& d,
                                   const std::vector<int32_t>& cornerstones) {
  check_matrix(d);
  check_cornerstones(d, cornerstones);
  const int n = d.meta.n;
  std::vector<int32_t> assign(n, 0);
  for (int j = 0; j < n; ++j) {
    double best = kInf;
    int32_t arg = 0;
    for (size_t q = 0; q < cornerstones.size(); ++q) {
      double v = d.at(cornerstones[q], j);
      if (v < best) {
        best = v;
        arg = static_cast<int32_t>(q);
      }
    }
    assign[j] = arg;
  }
  return assign;
}

AffiliationMatrix fuzzy_affiliations(const SemidistanceMatrix& d,
                                     const std::vector<int32_t>& cornerstones,
                                     double m) {
  check_matrix(d);
  check_cornerstones(d, cornerstones);
  if (!(m > 1.0)) throw ValidationError("coherence: fuzzifier m must exceed 1");

  const int n = d.meta.n;
  const int Q = static_cast<int>(cornerstones.size());
  const double expo = 2.0 / (m - 1.0);

  AffiliationMatrix a;
  a.m = m;
  a.num_cornerstones = Q;
  a.num_trajectories = n;
  a.values.assign(static_cast<size_t>(Q) * n, 0.0);

  std::vector<double> dj(Q), w(Q);
  for (int j = 0; j < n; ++j) {
    int zero_q = -1;
    double dmin = kInf;
    for (int q = 0; q < Q; ++q) {
      dj[q] = d.at(cornerstones[q], j);
      if (dj[q] == 0.0 && zero_q < 0) zero_q = q;
      if (dj[q] < dmin) dmin = dj[q];
    }
    if (zero_q >= 0) {
      a.values[static_cast<size_t>(zero_q) * n + j] = 1.0;
      continue;
    }
    if (std::isinf(dmin))
      throw ComputeError("affiliation: trajectory " + std::to_string(j) +
                         " is unreachable from every cornerstone");
    // Shared-denominator form in log space: w_q = (d_q / d_min)^(-expo)
    // stays in (0, 1], so the normalisation never overflows and each column
    // sums to one up to rounding.
    double total = 0.0;
    const double log_dmin = std::log(dmin);
    for (int q = 0; q < Q; ++q) {
      w[q] = std::isinf(dj[q]) ? 0.0 : std::exp(-expo * (std::log(dj[q]) - log_dmin));
      total += w[q];
    }
    for (int q = 0; q < Q; ++q)
      a.values[static_cast<size_t>(q) * n + j] = w[q] / total;
  }
  return a;
}

}  // namespace ldcoh
