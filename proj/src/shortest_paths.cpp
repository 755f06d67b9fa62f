#include "ldcoh/shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ldcoh/common.hpp"
#include "ldcoh/parallel.hpp"

namespace ldcoh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Axis periods as plain doubles with +inf meaning "not periodic": the
// minimum-image reduction dx = min(|dx|, period - |dx|) is then branch-free
// and the same code path serves both cases.
struct AxisPeriods {
  double p[2] = {kInf, kInf};
};

AxisPeriods axis_periods(const Geometry& g) {
  AxisPeriods ap;
  for (int d = 0; d < g.dim && d < 2; ++d)
    if (g.periods[d]) ap.p[d] = *g.periods[d];
  return ap;
}

void deinterleave(const double* slice, int I, double* xs, double* ys) {
  for (int i = 0; i < I; ++i) {
    xs[i] = slice[2 * i];
    ys[i] = slice[2 * i + 1];
  }
}

// ---- dense fast path: every trajectory present at both slices -------------

// The hop composition dist + c * d^2 is written with an explicit fused
// multiply-add in every sweep (vectorised or scalar) so that the pruned and
// unpruned variants produce identical bits no matter how the compiler would
// otherwise contract the expression.

void reach_sweep_1d(const double* x, int I, const double* dist, double cpre,
                    double px, double* reach) {
  for (int l = 0; l < I; ++l) {
    const double lx = x[l];
    double best = kInf;
#pragma omp simd reduction(min : best)
    for (int i = 0; i < I; ++i) {
      double dx = std::fabs(x[i] - lx);
      double ax = px - dx;
      dx = dx < ax ? dx : ax;
      double c = std::fma(cpre, dx * dx, dist[i]);
      best = c < best ? c : best;
    }
    reach[l] = best;
  }
}

void relax_sweep_1d(const double* x, int I, const double* reach, double cpost,
                    double px, double* dist) {
  for (int j = 0; j < I; ++j) {
    const double jx = x[j];
    double best = dist[j];
#pragma omp simd reduction(min : best)
    for (int l = 0; l < I; ++l) {
      double dx = std::fabs(jx - x[l]);
      double ax = px - dx;
      dx = dx < ax ? dx : ax;
      double c = std::fma(cpost, dx * dx, reach[l]);
      best = c < best ? c : best;
    }
    dist[j] = best;
  }
}

void reach_sweep_2d(const double* xs, const double* ys, int I, const double* dist,
                    double cpre, double px, double py, double* reach) {
  for (int l = 0; l < I; ++l) {
    const double lx = xs[l], ly = ys[l];
    double best = kInf;
#pragma omp simd reduction(min : best)
    for (int i = 0; i < I; ++i) {
      double dx = std::fabs(xs[i] - lx);
      double ax = px - dx;
      dx = dx < ax ? dx : ax;
      double dy = std::fabs(ys[i] - ly);
      double ay = py - dy;
      dy = dy < ay ? dy : ay;
      double c = std::fma(cpre, std::fma(dy, dy, dx * dx), dist[i]);
      best = c < best ? c : best;
    }
    reach[l] = best;
  }
}

void relax_sweep_2d(const double* xs, const double* ys, int I, const double* reach,
                    double cpost, double px, double py, double* dist) {
  for (int j = 0; j < I; ++j) {
    const double jx = xs[j], jy = ys[j];
    double best = dist[j];
#pragma omp simd reduction(min : best)
    for (int l = 0; l < I; ++l) {
      double dx = std::fabs(jx - xs[l]);
      double ax = px - dx;
      dx = dx < ax ? dx : ax;
      double dy = std::fabs(jy - ys[l]);
      double ay = py - dy;
      dy = dy < ay ? dy : ay;
      double c = std::fma(cpost, std::fma(dy, dy, dx * dx), reach[l]);
      best = c < best ? c : best;
    }
    dist[j] = best;
  }
}

// Exact pruned variant of the backward sweep: candidates are visited in
// ascending reach order and the scan stops once even a zero-length post hop
// could not improve. Skipped candidates satisfy reach >= best <= candidate,
// so the minimum (and every output bit) is unchanged.
template <int DIM>
void relax_sweep_pruned(const double* xs, const double* ys, int I,
                        const double* reach, const int32_t* order, double cpost,
                        double px, double py, double* dist) {
  for (int j = 0; j < I; ++j) {
    const double jx = xs[j];
    const double jy = DIM == 2 ? ys[j] : 0.0;
    double best = dist[j];
    for (int r = 0; r < I; ++r) {
      const int l = order[r];
      if (!(reach[l] < best)) break;
      double dx = std::fabs(jx - xs[l]);
      double ax = px - dx;
      dx = dx < ax ? dx : ax;
      double d2 = dx * dx;
      if (DIM == 2) {
        double dy = std::fabs(jy - ys[l]);
        double ay = py - dy;
        dy = dy < ay ? dy : ay;
        d2 = std::fma(dy, dy, dx * dx);
      }
      double c = std::fma(cpost, d2, reach[l]);
      if (c < best) best = c;
    }
    dist[j] = best;
  }
}

// ---- dense general path: gappy slices, any dimension ----------------------

void reach_sweep_masked(const TrajectoryEnsemble& e, int k, const double* dist,
                        double cpre, double* reach) {
  const Geometry& g = e.geometry();
  for (int32_t l : e.flow_pairs(k)) {
    auto xl = e.position(l, k);
    double best = kInf;
    for (int32_t i : e.present_at(k)) {
      double c = dist[i] + cpre * g.squared_displacement(xl, e.position(i, k));
      if (c < best) best = c;
    }
    reach[l] = best;
  }
}

void relax_sweep_masked(const TrajectoryEnsemble& e, int k, const double* reach,
                        double cpost, double* dist) {
  const Geometry& g = e.geometry();
  for (int32_t j : e.present_at(k + 1)) {
    auto xj = e.position(j, k + 1);
    double best = dist[j];
    for (int32_t l : e.flow_pairs(k)) {
      double c = reach[l] + cpost * g.squared_displacement(xj, e.position(l, k + 1));
      if (c < best) best = c;
    }
    dist[j] = best;
  }
}

struct DenseScratch {
  std::vector<double> xa, ya, xb, yb, reach;
  std::vector<int32_t> order;
  void resize(int I) {
    xa.resize(I);
    ya.resize(I);
    xb.resize(I);
    yb.resize(I);
    reach.resize(I);
    order.resize(I);
  }
};

void check_source(const TrajectoryEnsemble& e, int32_t s) {
  if (s < 0 || s >= e.num_trajectories())
    throw ValidationError("rates: source index out of range");
  if (!e.ever_present(s))
    throw ValidationError("rates: source trajectory " + std::to_string(e.labels()[s]) +
                          " is never present");
}

void check_snapshots(std::span<const int> snaps, int K) {
  for (size_t i = 0; i < snaps.size(); ++i) {
    if (snaps[i] < 1 || snaps[i] > K)
      throw ValidationError("rates: snapshot step out of range");
    if (i > 0 && snaps[i] <= snaps[i - 1])
      throw ValidationError("rates: snapshot steps must be ascending");
  }
}

using SnapshotFn = std::function<void(int, std::span<const double>)>;

void dense_solve(const HopCostModel& m, int32_t s, const SolveOptions& opt,
                 std::span<const int> snaps, const SnapshotFn& on_snapshot,
                 DenseScratch& ws, std::vector<double>& dist) {
  const TrajectoryEnsemble& e = m.ensemble();
  const int I = e.num_trajectories();
  const int K = e.num_steps();
  const int dim = e.dim();
  const double alpha = m.alpha();
  const AxisPeriods ap = axis_periods(e.geometry());

  dist.assign(I, kInf);
  dist[s] = 0.0;
  ws.resize(I);

  size_t snap_next = 0;
  for (int k = 0; k < K; ++k) {
    if (!e.flow_pairs(k).empty()) {
      const double tau = e.grid().tau(k);
      const double cpre = 1.0 / (2.0 * alpha * tau);
      const double cpost = 1.0 / (2.0 * (1.0 - alpha) * tau);
      const bool fast = (dim <= 2) && e.slice_full(k) && e.slice_full(k + 1);
      if (fast && dim == 2) {
        deinterleave(e.slice_ptr(k), I, ws.xa.data(), ws.ya.data());
        deinterleave(e.slice_ptr(k + 1), I, ws.xb.data(), ws.yb.data());
        reach_sweep_2d(ws.xa.data(), ws.ya.data(), I, dist.data(), cpre,
                       ap.p[0], ap.p[1], ws.reach.data());
        if (opt.prune) {
          std::iota(ws.order.begin(), ws.order.end(), 0);
          std::sort(ws.order.begin(), ws.order.end(), [&](int32_t a, int32_t b) {
            return ws.reach[a] < ws.reach[b];
          });
          relax_sweep_pruned<2>(ws.xb.data(), ws.yb.data(), I, ws.reach.data(),
                                ws.order.data(), cpost, ap.p[0], ap.p[1], dist.data());
        } else {
          relax_sweep_2d(ws.xb.data(), ws.yb.data(), I, ws.reach.data(), cpost,
                         ap.p[0], ap.p[1], dist.data());
        }
      } else if (fast && dim == 1) {
        reach_sweep_1d(e.slice_ptr(k), I, dist.data(), cpre, ap.p[0], ws.reach.data());
        if (opt.prune) {
          std::iota(ws.order.begin(), ws.order.end(), 0);
          std::sort(ws.order.begin(), ws.order.end(), [&](int32_t a, int32_t b) {
            return ws.reach[a] < ws.reach[b];
          });
          relax_sweep_pruned<1>(e.slice_ptr(k + 1), nullptr, I, ws.reach.data(),
                                ws.order.data(), cpost, ap.p[0], kInf, dist.data());
        } else {
          relax_sweep_1d(e.slice_ptr(k + 1), I, ws.reach.data(), cpost, ap.p[0],
                         dist.data());
        }
      } else {
        reach_sweep_masked(e, k, dist.data(), cpre, ws.reach.data());
        relax_sweep_masked(e, k, ws.reach.data(), cpost, dist.data());
      }
    }
    if (snap_next < snaps.size() && snaps[snap_next] == k + 1) {
      on_snapshot(k + 1, dist);
      ++snap_next;
    }
  }
}

// ---- reached-set label correction (reference solver) -----------------------

// Nodes with a finite distance that are present at the step's start are
// processed costliest-first. With that order an unprocessed candidate can
// never be improved during the step (its improver would need a cheaper
// distance plus a non-negative step cost), so one pass per step suffices and
// staying put is encoded by leaving dist alone.
void reached_step_order(const TrajectoryEnsemble& e, int k,
                           const std::vector<double>& dist,
                           std::vector<int32_t>& cand) {
  cand.clear();
  for (int32_t i : e.present_at(k))
    if (dist[i] < kInf) cand.push_back(i);
  std::sort(cand.begin(), cand.end(), [&](int32_t a, int32_t b) {
    if (dist[a] != dist[b]) return dist[a] > dist[b];
    return a < b;
  });
}

void reached_solve(const HopCostModel& m, int32_t s,
                      std::span<const int> snaps, const SnapshotFn& on_snapshot,
                      std::vector<double>& dist) {
  const TrajectoryEnsemble& e = m.ensemble();
  const int K = e.num_steps();
  dist.assign(e.num_trajectories(), kInf);
  dist[s] = 0.0;
  std::vector<int32_t> cand;
  size_t snap_next = 0;
  for (int k = 0; k < K; ++k) {
    if (!e.flow_pairs(k).empty()) {
      reached_step_order(e, k, dist, cand);
      for (int32_t v : cand) {
        for (int32_t j : e.present_at(k + 1)) {
          double c = dist[v] + m.step_cost(k, v, j).cost;
          if (c < dist[j]) dist[j] = c;
        }
      }
    }
    if (snap_next < snaps.size() && snaps[snap_next] == k + 1) {
      on_snapshot(k + 1, dist);
      ++snap_next;
    }
  }
}

}  // namespace

RateVector single_source_rates(const HopCostModel& m, int32_t source,
                               const SolveOptions& opt) {
  RateVector rv;
  rv.source = source;
  check_source(m.ensemble(), source);
  if (opt.solver == Solver::dense) {
    DenseScratch ws;
    dense_solve(m, source, opt, {}, [](int, std::span<const double>) {}, ws, rv.dist);
  } else {
    reached_solve(m, source, {}, [](int, std::span<const double>) {}, rv.dist);
  }
  return rv;
}

void single_source_rates_snapshots(const HopCostModel& m, int32_t source,
                                   const SolveOptions& opt,
                                   std::span<const int> snapshot_steps,
                                   const SnapshotFn& on_snapshot) {
  check_source(m.ensemble(), source);
  check_snapshots(snapshot_steps, m.ensemble().num_steps());
  std::vector<double> dist;
  if (opt.solver == Solver::dense) {
    DenseScratch ws;
    dense_solve(m, source, opt, snapshot_steps, on_snapshot, ws, dist);
  } else {
    reached_solve(m, source, snapshot_steps, on_snapshot, dist);
  }
}

PathSolveResult single_source_paths(const HopCostModel& m, int32_t source) {
  const TrajectoryEnsemble& e = m.ensemble();
  check_source(e, source);
  const int I = e.num_trajectories();
  const int K = e.num_steps();

  std::vector<double> dist(I, kInf);
  dist[source] = 0.0;
  // Itinerary prefixes, -1 meaning "still riding the previous label".
  std::vector<int32_t> spath(static_cast<size_t>(I) * (K + 1), -1);
  for (int t = 0; t <= K; ++t) spath[static_cast<size_t>(source) * (K + 1) + t] = source;

  std::vector<int32_t> cand;
  for (int k = 0; k < K; ++k) {
    if (e.flow_pairs(k).empty()) continue;
    reached_step_order(e, k, dist, cand);
    for (int32_t v : cand) {
      for (int32_t j : e.present_at(k + 1)) {
        double c = dist[v] + m.step_cost(k, v, j).cost;
        if (c < dist[j]) {
          dist[j] = c;
          auto* pv = spath.data() + static_cast<size_t>(v) * (K + 1);
          auto* pj = spath.data() + static_cast<size_t>(j) * (K + 1);
          std::copy(pv, pv + k + 1, pj);
          pj[k + 1] = j;
        }
      }
    }
  }

  PathSolveResult res;
  res.rates.source = source;
  res.rates.dist = dist;
  res.paths.resize(I);
  std::vector<int32_t> nodes(K + 1);
  for (int j = 0; j < I; ++j) {
    if (!(dist[j] < kInf)) continue;
    const auto* pj = spath.data() + static_cast<size_t>(j) * (K + 1);
    int32_t cur = pj[0];
    for (int t = 0; t <= K; ++t) {
      if (pj[t] >= 0) cur = pj[t];
      nodes[t] = cur;
    }
    res.paths[j] = path_cost(m, nodes);
  }
  return res;
}

RateMatrix all_pairs_rates(const HopCostModel& m, const SolveOptions& opt,
                           int workers) {
  const int last = m.ensemble().num_steps();
  auto mats = all_pairs_rates_snapshots(m, opt, std::span<const int>(&last, 1), workers);
  return std::move(mats.front());
}

std::vector<RateMatrix> all_pairs_rates_snapshots(const HopCostModel& m,
                                                  const SolveOptions& opt,
                                                  std::span<const int> snapshot_steps,
                                                  int workers) {
  const TrajectoryEnsemble& e = m.ensemble();
  const int I = e.num_trajectories();
  check_snapshots(snapshot_steps, e.num_steps());
  if (snapshot_steps.empty())
    throw ValidationError("rates: need at least one snapshot step");

  std::vector<RateMatrix> out(snapshot_steps.size());
  for (size_t q = 0; q < snapshot_steps.size(); ++q) {
    out[q].meta.kind = MatrixKind::one_way;
    out[q].meta.n = I;
    out[q].meta.num_steps = snapshot_steps[q];
    out[q].meta.alpha = m.alpha();
    out[q].meta.mean_tau = e.grid().mean_tau();
    out[q].meta.ensemble_checksum = e.checksum();
    out[q].meta.labels = e.labels();
    out[q].values.assign(static_cast<size_t>(I) * I, kInf);
  }

  parallel_for(I, workers, [&](int64_t s) {
    DenseScratch ws;
    std::vector<double> dist;
    auto sink = [&](int k, std::span<const double> d) {
      for (size_t q = 0; q < snapshot_steps.size(); ++q) {
        if (snapshot_steps[q] == k) {
          std::copy(d.begin(), d.end(),
                    out[q].values.begin() + static_cast<size_t>(s) * I);
          break;
        }
      }
    };
    check_source(e, static_cast<int32_t>(s));
    if (opt.solver == Solver::dense) {
      dense_solve(m, static_cast<int32_t>(s), opt, snapshot_steps, sink, ws, dist);
    } else {
      reached_solve(m, static_cast<int32_t>(s), snapshot_steps, sink, dist);
    }
  });
  return out;
}

}  // namespace ldcoh
