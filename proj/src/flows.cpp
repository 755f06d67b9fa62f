#include "ldcoh/flows.hpp"

#include <cmath>

#include "ldcoh/common.hpp"
#include "ldcoh/parallel.hpp"
#include "ldcoh/rk4.hpp"
#include "ldcoh/rng.hpp"

namespace ldcoh {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bickley jet constants (Mm and days).
constexpr double kBjU0 = 5.414;
constexpr double kBjL = 1.77;
constexpr double kBjRe = 6.371;
constexpr double kBjA[3] = {0.0075, 0.15, 0.3};
constexpr double kBjCfrac[3] = {0.1446, 0.205, 0.461};

void velocity_double_gyre(const FlowSpec& f, double t, const double* x, double* out) {
  const double st = f.wobble * std::sin(f.omega * t);
  const double z = x[0];
  const double fz = st * z * z + (1.0 - 2.0 * st) * z;
  const double dfz = 2.0 * st * z + 1.0 - 2.0 * st;
  out[0] = -kPi * f.amplitude * std::sin(kPi * fz) * std::cos(kPi * x[1]);
  out[1] = kPi * f.amplitude * std::cos(kPi * fz) * std::sin(kPi * x[1]) * dfz;
}

double stream_double_gyre(const FlowSpec& f, double t, const double* x) {
  const double st = f.wobble * std::sin(f.omega * t);
  const double z = x[0];
  const double fz = st * z * z + (1.0 - 2.0 * st) * z;
  return f.amplitude * std::sin(kPi * fz) * std::sin(kPi * x[1]);
}

void velocity_rotating_double_gyre(double t, const double* x, double* out) {
  const double s = t * t * (3.0 - 2.0 * t);
  out[0] = -((1.0 - s) * kPi * std::sin(2.0 * kPi * x[0]) * std::cos(kPi * x[1]) +
             s * 2.0 * kPi * std::sin(kPi * x[0]) * std::cos(2.0 * kPi * x[1]));
  out[1] = (1.0 - s) * 2.0 * kPi * std::cos(2.0 * kPi * x[0]) * std::sin(kPi * x[1]) +
           s * kPi * std::cos(kPi * x[0]) * std::sin(2.0 * kPi * x[1]);
}

double stream_rotating_double_gyre(double t, const double* x) {
  const double s = t * t * (3.0 - 2.0 * t);
  return (1.0 - s) * std::sin(2.0 * kPi * x[0]) * std::sin(kPi * x[1]) +
         s * std::sin(kPi * x[0]) * std::sin(2.0 * kPi * x[1]);
}

void velocity_bickley(double t, const double* x, double* out) {
  const double yl = x[1] / kBjL;
  const double sech = 1.0 / std::cosh(yl);
  const double sech2 = sech * sech;
  const double th = std::tanh(yl);
  double sum_c = 0.0, sum_s = 0.0;
  for (int n = 0; n < 3; ++n) {
    const double kn = 2.0 * (n + 1) / kBjRe;
    const double cn = kBjCfrac[n] * kBjU0;
    const double ph = kn * (x[0] - cn * t);
    sum_c += kBjA[n] * std::cos(ph);
    sum_s += kBjA[n] * kn * std::sin(ph);
  }
  out[0] = kBjU0 * sech2 * (1.0 + 2.0 * th * sum_c);
  out[1] = -kBjU0 * kBjL * sech2 * sum_s;
}

double stream_bickley(double t, const double* x) {
  const double yl = x[1] / kBjL;
  const double sech = 1.0 / std::cosh(yl);
  double sum_c = 0.0;
  for (int n = 0; n < 3; ++n) {
    const double kn = 2.0 * (n + 1) / kBjRe;
    const double cn = kBjCfrac[n] * kBjU0;
    sum_c += kBjA[n] * std::cos(kn * (x[0] - cn * t));
  }
  return -kBjU0 * kBjL * std::tanh(yl) + kBjU0 * kBjL * sech * sech * sum_c;
}

double map_two_mixing(double x) {
  if (x < 0.5) return std::fmod(4.0 * x, 0.5);
  return 0.5 + std::fmod(4.0 * (x - 0.5), 0.5);
}

double map_static_mixing_static(double x) {
  if (x < 0.25 || x > 0.75) return x;
  return 0.25 + std::fmod(2.0 * (x - 0.25), 0.5);
}

}  // namespace

const char* flow_variant_name(FlowVariant v) {
  switch (v) {
    case FlowVariant::zero_flow: return "zero_flow";
    case FlowVariant::double_gyre: return "double_gyre";
    case FlowVariant::rotating_double_gyre: return "rotating_double_gyre";
    case FlowVariant::bickley_jet: return "bickley_jet";
    case FlowVariant::map_two_mixing: return "map_two_mixing";
    case FlowVariant::map_static_mixing_static: return "map_static_mixing_static";
  }
  return "unknown";
}

FlowVariant flow_variant_from_name(const std::string& name) {
  for (FlowVariant v : {FlowVariant::zero_flow, FlowVariant::double_gyre,
                        FlowVariant::rotating_double_gyre, FlowVariant::bickley_jet,
                        FlowVariant::map_two_mixing,
                        FlowVariant::map_static_mixing_static}) {
    if (name == flow_variant_name(v)) return v;
  }
  throw ValidationError("unknown flow variant '" + name + "'");
}

FlowSpec FlowSpec::make(FlowVariant v) {
  FlowSpec f;
  f.variant = v;
  switch (v) {
    case FlowVariant::zero_flow:
      f.lo = {0.0};
      f.hi = {1.0};
      f.periods = {std::nullopt};
      break;
    case FlowVariant::double_gyre:
      f.lo = {0.0, 0.0};
      f.hi = {2.0, 1.0};
      f.periods = {std::nullopt, std::nullopt};
      break;
    case FlowVariant::rotating_double_gyre:
      f.lo = {0.0, 0.0};
      f.hi = {1.0, 1.0};
      f.periods = {std::nullopt, std::nullopt};
      break;
    case FlowVariant::bickley_jet:
      f.lo = {0.0, -3.0};
      f.hi = {kPi * kBjRe, 3.0};
      f.periods = {kPi * kBjRe, std::nullopt};
      break;
    case FlowVariant::map_two_mixing:
    case FlowVariant::map_static_mixing_static:
      f.lo = {0.0};
      f.hi = {1.0};
      f.periods = {std::nullopt};
      break;
  }
  return f;
}

bool FlowSpec::is_map() const {
  return variant == FlowVariant::map_two_mixing ||
         variant == FlowVariant::map_static_mixing_static;
}

Geometry FlowSpec::geometry() const {
  return Geometry(dim(), periods);
}

void velocity(const FlowSpec& f, double t, const double* x, double* out) {
  switch (f.variant) {
    case FlowVariant::zero_flow:
      for (int d = 0; d < f.dim(); ++d) out[d] = 0.0;
      return;
    case FlowVariant::double_gyre:
      velocity_double_gyre(f, t, x, out);
      return;
    case FlowVariant::rotating_double_gyre:
      velocity_rotating_double_gyre(t, x, out);
      return;
    case FlowVariant::bickley_jet:
      velocity_bickley(t, x, out);
      return;
    case FlowVariant::map_two_mixing:
    case FlowVariant::map_static_mixing_static:
      throw ValidationError("velocity: " + std::string(flow_variant_name(f.variant)) +
                            " is a discrete map");
  }
}

double stream_function(const FlowSpec& f, double t, const double* x) {
  switch (f.variant) {
    case FlowVariant::zero_flow:
      if (f.dim() != 2)
        throw ValidationError("stream function: needs a 2-d flow");
      return 0.0;
    case FlowVariant::double_gyre:
      return stream_double_gyre(f, t, x);
    case FlowVariant::rotating_double_gyre:
      return stream_rotating_double_gyre(t, x);
    case FlowVariant::bickley_jet:
      return stream_bickley(t, x);
    default:
      throw ValidationError("stream function: not defined for a discrete map");
  }
}

void map_apply(const FlowSpec& f, const double* x, double* out) {
  switch (f.variant) {
    case FlowVariant::map_two_mixing:
      out[0] = map_two_mixing(x[0]);
      return;
    case FlowVariant::map_static_mixing_static:
      out[0] = map_static_mixing_static(x[0]);
      return;
    default:
      throw ValidationError("map_apply: " + std::string(flow_variant_name(f.variant)) +
                            " is not a discrete map");
  }
}

void advect(const FlowSpec& f, double t0, double t1, const double* x,
            const IntegratorConfig& cfg, double* out) {
  if (f.is_map()) throw ValidationError("advect: flow is a discrete map");
  if (cfg.substeps < 1) throw ValidationError("advect: substeps must be >= 1");
  const int dim = f.dim();
  const Geometry g = f.geometry();
  double y[kMaxFlowDim];
  for (int d = 0; d < dim; ++d) y[d] = x[d];
  const double h = (t1 - t0) / cfg.substeps;
  auto field = [&f](double t, const double* p, double* v) { velocity(f, t, p, v); };
  for (int s = 0; s < cfg.substeps; ++s) {
    rk4_step(field, dim, t0 + s * h, h, y);
    for (int d = 0; d < dim; ++d) y[d] = g.wrap(d, y[d]);
  }
  for (int d = 0; d < dim; ++d) out[d] = y[d];
}

SeedSpec SeedSpec::grid(std::vector<int> counts) {
  SeedSpec s;
  s.kind = Kind::grid;
  s.counts = std::move(counts);
  return s;
}

SeedSpec SeedSpec::explicit_points(std::vector<std::vector<double>> pts) {
  SeedSpec s;
  s.kind = Kind::explicit_points;
  s.points = std::move(pts);
  return s;
}

SeedSpec SeedSpec::random(int n, uint64_t seed) {
  SeedSpec s;
  s.kind = Kind::random;
  s.n = n;
  s.seed = seed;
  return s;
}

std::vector<std::vector<double>> make_seeds(const FlowSpec& f, const SeedSpec& s) {
  const int dim = f.dim();
  std::vector<std::vector<double>> pts;
  switch (s.kind) {
    case SeedSpec::Kind::grid: {
      if (static_cast<int>(s.counts.size()) != dim)
        throw ValidationError("seeds: need one grid count per axis");
      long total = 1;
      for (int c : s.counts) {
        if (c < 1) throw ValidationError("seeds: grid counts must be positive");
        total *= c;
      }
      pts.reserve(total);
      std::vector<int> idx(dim, 0);
      for (long r = 0; r < total; ++r) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d)
          p[d] = f.lo[d] + (idx[d] + 0.5) * (f.hi[d] - f.lo[d]) / s.counts[d];
        pts.push_back(std::move(p));
        for (int d = dim - 1; d >= 0; --d) {  // last axis fastest
          if (++idx[d] < s.counts[d]) break;
          idx[d] = 0;
        }
      }
      break;
    }
    case SeedSpec::Kind::explicit_points: {
      if (s.points.empty()) throw ValidationError("seeds: no points given");
      for (const auto& p : s.points) {
        if (static_cast<int>(p.size()) != dim)
          throw ValidationError("seeds: point dimension mismatch");
        for (int d = 0; d < dim; ++d)
          if (!(p[d] >= f.lo[d] && p[d] <= f.hi[d]))
            throw ValidationError("seeds: point outside the domain box");
      }
      pts = s.points;
      break;
    }
    case SeedSpec::Kind::random: {
      if (s.n < 1) throw ValidationError("seeds: need at least one random point");
      pts.reserve(s.n);
      for (int i = 0; i < s.n; ++i) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d) {
          double u = u01(s.seed, static_cast<uint64_t>(i) * dim + d);
          p[d] = f.lo[d] + u * (f.hi[d] - f.lo[d]);
        }
        pts.push_back(std::move(p));
      }
      break;
    }
  }
  return pts;
}

TrajectoryEnsemble generate_ensemble(const FlowSpec& f, const SeedSpec& seeds,
                                     const TimeGrid& grid,
                                     const IntegratorConfig& cfg, int workers) {
  const int dim = f.dim();
  if (dim > kMaxFlowDim) throw ValidationError("generate: unsupported dimension");
  if (f.is_map()) {
    for (int k = 0; k < grid.num_steps(); ++k)
      if (grid.tau(k) != 1.0)
        throw ValidationError("generate: discrete maps need a unit-step time grid");
  }
  auto pts = make_seeds(f, seeds);
  const int I = static_cast<int>(pts.size());
  const int K = grid.num_steps();

  std::vector<double> buf(static_cast<size_t>(I) * (K + 1) * dim);
  parallel_for(I, workers, [&](int64_t i) {
    double* row = buf.data() + static_cast<size_t>(i) * (K + 1) * dim;
    for (int d = 0; d < dim; ++d) row[d] = pts[i][d];
    for (int k = 0; k < K; ++k) {
      const double* cur = row + static_cast<size_t>(k) * dim;
      double* nxt = row + static_cast<size_t>(k + 1) * dim;
      if (f.is_map()) {
        map_apply(f, cur, nxt);
      } else {
        advect(f, grid.time(k), grid.time(k + 1), cur, cfg, nxt);
      }
    }
  });

  std::vector<int64_t> labels(I);
  for (int i = 0; i < I; ++i) labels[i] = i + 1;
  EnsembleBuilder b(f.geometry(), grid, labels);
  for (int i = 0; i < I; ++i)
    for (int k = 0; k <= K; ++k)
      b.set(i + 1, k,
            std::span<const double>(
                buf.data() + (static_cast<size_t>(i) * (K + 1) + k) * dim, dim));
  return b.build();
}

}  // namespace ldcoh
