#include "ldcoh/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ldcoh/coherence.hpp"
#include "ldcoh/common.hpp"
#include "ldcoh/ensemble_io.hpp"
#include "ldcoh/flows.hpp"
#include "ldcoh/semidistance.hpp"
#include "ldcoh/shortest_paths.hpp"

namespace ldcoh {

namespace {
using nlohmann::json;

struct Preset {
  std::vector<int> counts;
  int num_steps;
  double tau;
  double t0;
};

Preset preset_for(FlowVariant v, const std::string& profile) {
  const bool ci = profile == "ci";
  switch (v) {
    case FlowVariant::zero_flow:
      return {{101}, 10, 0.1, 0.0};
    case FlowVariant::double_gyre:
      return {ci ? std::vector<int>{30, 15} : std::vector<int>{50, 25}, 100, 0.2, 0.0};
    case FlowVariant::rotating_double_gyre:
      return {ci ? std::vector<int>{20, 20} : std::vector<int>{30, 30}, 100, 0.01, 0.0};
    case FlowVariant::bickley_jet:
      return {ci ? std::vector<int>{30, 9} : std::vector<int>{60, 18},
              ci ? 40 : 80, 0.5, 0.0};
    case FlowVariant::map_two_mixing:
      return {{100}, 100, 1.0, 0.0};
    case FlowVariant::map_static_mixing_static:
      return {{100}, 50, 1.0, 0.0};
  }
  throw ValidationError("generate: unknown flow");
}

double unit_scale(const std::string& units, double mean_tau) {
  return units == "per-tau" ? mean_tau : 1.0;
}

std::string fingerprint_matrix(const MatrixFile& mf) {
  Fnv1a h;
  h.update(mf.meta.labels.data(), mf.meta.labels.size() * sizeof(int64_t));
  if (!mf.meet_via.empty())
    h.update(mf.meet_via.data(), mf.meet_via.size() * sizeof(int32_t));
  h.update(mf.values.data(), mf.values.size() * sizeof(double));
  return hex_u64(h.digest());
}

int matrix_index_of_label(const MatrixMeta& meta, int64_t label,
                          const std::string& what) {
  for (size_t i = 0; i < meta.labels.size(); ++i)
    if (meta.labels[i] == label) return static_cast<int>(i);
  throw ValidationError(what + ": label " + std::to_string(label) +
                        " not in the matrix");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

int cmd_generate(const RunConfig& c) {
  c.validate_common();
  require(!c.flow.empty(), "generate: --flow is required");
  require(!c.out.empty(), "generate: --out is required");
  FlowVariant v = flow_variant_from_name(c.flow);
  FlowSpec spec = FlowSpec::make(v);
  Preset p = preset_for(v, c.profile);
  if (!c.grid_counts.empty()) p.counts = c.grid_counts;
  if (c.num_steps > 0) p.num_steps = c.num_steps;
  if (c.tau > 0.0) p.tau = c.tau;
  p.t0 = c.t0;

  SeedSpec seeds = SeedSpec::grid(p.counts);
  if (c.seed_mode == "random") {
    require(c.random_n > 0, "generate: --random-n must be positive");
    seeds = SeedSpec::random(c.random_n, c.seed);
  } else {
    require(c.seed_mode == "grid", "generate: seed mode must be grid or random");
    require(static_cast<int>(p.counts.size()) == spec.dim(),
            "generate: need one grid count per axis");
  }

  IntegratorConfig icfg{c.substeps};
  TimeGrid grid = TimeGrid::uniform(p.t0, p.num_steps, p.tau);

  RunConfig cc = c;
  cc.grid_counts = p.counts;
  cc.num_steps = p.num_steps;
  cc.tau = p.tau;
  uint64_t hash = run_config_hash(cc, {});

  TrajectoryEnsemble e = generate_ensemble(spec, seeds, grid, icfg, c.workers);
  if (c.out.size() > 5 && c.out.substr(c.out.size() - 5) == ".json")
    save_ensemble_json(c.out, e, hash);
  else
    save_ensemble_csv(c.out, e, hash);
  write_run_config(config_path_for(c.out), cc, {}, hash);
  std::printf("generated %d trajectories, %d steps, checksum %s\n",
              e.num_trajectories(), e.num_steps(), hex_u64(e.checksum()).c_str());
  return 0;
}

int cmd_rates(const RunConfig& c) {
  c.validate_common();
  require(!c.ensemble_path.empty(), "rates: --ensemble is required");
  require(!c.out.empty(), "rates: --out is required");
  TrajectoryEnsemble e = load_ensemble(c.ensemble_path);
  InputFingerprints in{{"ensemble", hex_u64(e.checksum())}};
  uint64_t hash = run_config_hash(c, in);

  SolveOptions opt;
  if (c.solver == "dense")
    opt.solver = Solver::dense;
  else if (c.solver == "reached")
    opt.solver = Solver::reached;
  else
    throw ValidationError("rates: solver must be dense or reached");
  opt.prune = c.prune;

  HopCostModel model(e, c.alpha);
  RateMatrix r = all_pairs_rates(model, opt, c.workers);
  r.meta.config_hash = hash;
  write_matrix_file(c.out, r);
  if (!c.csv_out.empty()) write_matrix_csv(c.csv_out, r.meta, r.values);
  write_run_config(config_path_for(c.out), c, in, hash);
  std::printf("rates: %d x %d, alpha %s, config %s\n", r.meta.n, r.meta.n,
              format_double(r.meta.alpha).c_str(), hex_u64(hash).c_str());
  return 0;
}

int cmd_semidist(const RunConfig& c) {
  c.validate_common();
  require(!c.kind.empty(), "semidist: --kind is required");
  require(!c.out.empty(), "semidist: --out is required");
  MatrixKind kind = matrix_kind_from_name(c.kind);
  SemidistanceMatrix s;
  InputFingerprints in;
  if (kind == MatrixKind::l2) {
    require(!c.ensemble_path.empty(), "semidist: --kind l2 needs --ensemble");
    TrajectoryEnsemble e = load_ensemble(c.ensemble_path);
    in["ensemble"] = hex_u64(e.checksum());
    s = l2_matrix(e, c.workers);
  } else {
    require(kind == MatrixKind::cross || kind == MatrixKind::meet,
            "semidist: kind must be cross, meet or l2");
    require(!c.rates_path.empty(), "semidist: --rates is required");
    RateMatrix r = read_rate_matrix(c.rates_path);
    Fnv1a h;
    h.update(r.values.data(), r.values.size() * sizeof(double));
    in["rates"] = hex_u64(h.digest());
    s = kind == MatrixKind::cross ? cross_from_rates(r)
                                  : meet_from_rates(r, c.workers);
  }
  uint64_t hash = run_config_hash(c, in);
  s.meta.config_hash = hash;
  write_matrix_file(c.out, s);
  if (!c.csv_out.empty()) write_matrix_csv(c.csv_out, s.meta, s.values);
  write_run_config(config_path_for(c.out), c, in, hash);
  std::printf("semidist %s: %d x %d, config %s\n", matrix_kind_name(s.meta.kind),
              s.meta.n, s.meta.n, hex_u64(hash).c_str());
  return 0;
}

int cmd_cornerstones(const RunConfig& c) {
  c.validate_common();
  require(!c.matrix_path.empty(), "cornerstones: --matrix is required");
  require(!c.out.empty(), "cornerstones: --out is required");
  MatrixFile mf = read_matrix_file(c.matrix_path);
  require(mf.meta.kind != MatrixKind::one_way,
          "cornerstones: need a symmetric semidistance matrix (cross, meet or l2)");
  SemidistanceMatrix s{mf.meta, std::move(mf.values), std::move(mf.meet_via)};
  InputFingerprints in{{"matrix", fingerprint_matrix(MatrixFile{s.meta, s.values, s.meet_via})}};
  uint64_t hash = run_config_hash(c, in);

  CornerstoneOptions opt;
  opt.max_q = c.max_q;
  opt.seed = c.seed;
  opt.stop_factor = c.stop_factor;
  if (c.c0_label)
    opt.c0 = matrix_index_of_label(s.meta, *c.c0_label, "cornerstones");
  CornerstoneResult res = find_cornerstones(s, opt);

  const double scale = unit_scale(c.units, s.meta.mean_tau);
  json j;
  j["format_version"] = 1;
  j["config_hash"] = hex_u64(hash);
  j["matrix_fingerprint"] = in["matrix"];
  j["matrix_kind"] = matrix_kind_name(s.meta.kind);
  j["ensemble_checksum"] = hex_u64(s.meta.ensemble_checksum);
  j["seed"] = res.seed;
  j["c0_label"] = s.meta.labels[res.c0];
  j["stop_factor"] = res.stop_factor;
  j["units"] = c.units;
  j["unit_scale"] = scale;
  json labels = json::array(), values = json::array();
  for (size_t q = 0; q < res.cornerstones.size(); ++q) {
    labels.push_back(s.meta.labels[res.cornerstones[q]]);
    values.push_back(res.objectives[q] * scale);
  }
  j["cornerstone_labels"] = std::move(labels);
  j["objectives"] = std::move(values);
  if (res.suggested_q)
    j["suggested_q"] = *res.suggested_q;
  else
    j["suggested_q"] = nullptr;
  std::ofstream out(c.out, std::ios::trunc);
  if (!out) throw ValidationError("cornerstones: cannot open '" + c.out + "'");
  out << j.dump(2) << "\n";
  write_run_config(config_path_for(c.out), c, in, hash);
  std::printf("cornerstones: %d found, suggestion %s, config %s\n",
              static_cast<int>(res.cornerstones.size()),
              res.suggested_q ? std::to_string(*res.suggested_q).c_str() : "none",
              hex_u64(hash).c_str());
  return 0;
}

int cmd_cluster(const RunConfig& c) {
  c.validate_common();
  require(!c.matrix_path.empty(), "cluster: --matrix is required");
  require(!c.cornerstones_path.empty(), "cluster: --cornerstones is required");
  require(!c.ensemble_path.empty(), "cluster: --ensemble is required");
  require(!c.out.empty(), "cluster: --out is required");

  MatrixFile mf = read_matrix_file(c.matrix_path);
  require(mf.meta.kind != MatrixKind::one_way,
          "cluster: need a symmetric semidistance matrix");
  SemidistanceMatrix s{mf.meta, std::move(mf.values), std::move(mf.meet_via)};
  TrajectoryEnsemble e = load_ensemble(c.ensemble_path);
  require(e.checksum() == s.meta.ensemble_checksum,
          "cluster: matrix was built from a different ensemble");
  require(c.slice >= 0 && c.slice < e.grid().num_slices(),
          "cluster: --slice outside the grid");

  std::ifstream cin_(c.cornerstones_path);
  if (!cin_) throw ValidationError("cluster: cannot open '" + c.cornerstones_path + "'");
  json cj;
  try {
    cin_ >> cj;
  } catch (const json::exception& ex) {
    throw ValidationError(c.cornerstones_path + ": " + std::string(ex.what()));
  }
  require(cj.contains("cornerstone_labels"), "cluster: cornerstones file lacks labels");
  std::string fp = fingerprint_matrix(MatrixFile{s.meta, s.values, s.meet_via});
  if (cj.contains("matrix_fingerprint"))
    require(cj["matrix_fingerprint"].get<std::string>() == fp,
            "cluster: cornerstones were found on a different matrix");

  std::vector<int64_t> cs_labels = cj["cornerstone_labels"].get<std::vector<int64_t>>();
  int q = c.max_q;
  if (q <= 0) {
    if (cj.contains("suggested_q") && cj["suggested_q"].is_number())
      q = cj["suggested_q"].get<int>();
    else
      q = static_cast<int>(cs_labels.size());
  }
  require(q >= 1 && q <= static_cast<int>(cs_labels.size()),
          "cluster: -q exceeds the cornerstones found");
  cs_labels.resize(q);

  std::vector<int32_t> cs(q);
  for (int i = 0; i < q; ++i)
    cs[i] = matrix_index_of_label(s.meta, cs_labels[i], "cluster");

  InputFingerprints in{{"matrix", fp},
                       {"ensemble", hex_u64(e.checksum())},
                       {"cornerstones", hex_u64(fnv1a(cs.data(), cs.size() * sizeof(int32_t)))}};
  uint64_t hash = run_config_hash(c, in);

  std::vector<int32_t> hard = hard_clusters(s, cs);
  AffiliationMatrix aff = fuzzy_affiliations(s, cs, c.fuzzifier);

  const int n = s.meta.n;
  const std::string csv_path = c.out + ".csv";
  std::ofstream out(csv_path, std::ios::trunc);
  if (!out) throw ValidationError("cluster: cannot open '" + csv_path + "'");
  out << "# config_hash=" << hex_u64(hash) << " slice=" << c.slice
      << " m=" << format_double(c.fuzzifier) << "\n";
  out << "traj_id,present";
  for (int d = 0; d < e.dim(); ++d) out << ",x" << (d + 1);
  out << ",cluster_label";
  for (int i = 0; i < q; ++i) out << ",aff_" << cs_labels[i];
  out << "\n";
  for (int j2 = 0; j2 < n; ++j2) {
    int ei = e.label_index(s.meta.labels[j2]);
    require(ei >= 0, "cluster: matrix label missing from ensemble");
    bool present = e.is_present(ei, c.slice);
    out << s.meta.labels[j2] << "," << (present ? 1 : 0);
    for (int d = 0; d < e.dim(); ++d) {
      out << ",";
      if (present) out << format_double(e.position(ei, c.slice)[d]);
    }
    out << "," << cs_labels[hard[j2]];
    for (int i = 0; i < q; ++i) out << "," << format_double(aff.at(i, j2));
    out << "\n";
  }
  out.close();

  json aj;
  aj["format_version"] = 1;
  aj["config_hash"] = hex_u64(hash);
  aj["m"] = c.fuzzifier;
  aj["slice"] = c.slice;
  aj["cornerstone_labels"] = cs_labels;
  aj["trajectory_labels"] = s.meta.labels;
  json rows = json::array();
  for (int i = 0; i < q; ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < n; ++j2) row.push_back(aff.at(i, j2));
    rows.push_back(std::move(row));
  }
  aj["affiliations"] = std::move(rows);
  json hc = json::array();
  for (int j2 = 0; j2 < n; ++j2) hc.push_back(cs_labels[hard[j2]]);
  aj["hard_clusters"] = std::move(hc);
  const std::string json_path = c.out + ".json";
  std::ofstream jout(json_path, std::ios::trunc);
  if (!jout) throw ValidationError("cluster: cannot open '" + json_path + "'");
  jout << aj.dump(2) << "\n";
  write_run_config(c.out + ".config.json", c, in, hash);
  std::printf("cluster: %d cornerstones over %d trajectories, config %s\n", q, n,
              hex_u64(hash).c_str());
  return 0;
}

int cmd_export_plot(const RunConfig& c) {
  c.validate_common();
  require(!c.matrix_path.empty(), "export-plot: --matrix is required");
  require(!c.ensemble_path.empty(), "export-plot: --ensemble is required");
  require(!c.out.empty(), "export-plot: --out is required");
  MatrixFile mf = read_matrix_file(c.matrix_path);
  TrajectoryEnsemble e = load_ensemble(c.ensemble_path);
  require(e.checksum() == mf.meta.ensemble_checksum,
          "export-plot: matrix was built from a different ensemble");
  require(c.slice >= 0 && c.slice < e.grid().num_slices(),
          "export-plot: --slice outside the grid");
  int from = matrix_index_of_label(mf.meta, c.from_label, "export-plot");

  InputFingerprints in{{"matrix", fingerprint_matrix(mf)},
                       {"ensemble", hex_u64(e.checksum())}};
  uint64_t hash = run_config_hash(c, in);
  const double scale = unit_scale(c.units, mf.meta.mean_tau);

  std::ofstream out(c.out, std::ios::trunc);
  if (!out) throw ValidationError("export-plot: cannot open '" + c.out + "'");
  out << "# kind=" << matrix_kind_name(mf.meta.kind) << " from=" << c.from_label
      << " slice=" << c.slice << " units=" << c.units
      << " config_hash=" << hex_u64(hash) << "\n";
  out << "traj_id,present";
  for (int d = 0; d < e.dim(); ++d) out << ",x" << (d + 1);
  out << ",value\n";
  const size_t n = mf.meta.labels.size();
  for (size_t j = 0; j < n; ++j) {
    int ei = e.label_index(mf.meta.labels[j]);
    require(ei >= 0, "export-plot: matrix label missing from ensemble");
    bool present = e.is_present(ei, c.slice);
    out << mf.meta.labels[j] << "," << (present ? 1 : 0);
    for (int d = 0; d < e.dim(); ++d) {
      out << ",";
      if (present) out << format_double(e.position(ei, c.slice)[d]);
    }
    out << "," << format_double(mf.values[from * n + j] * scale) << "\n";
  }
  write_run_config(config_path_for(c.out), c, in, hash);
  return 0;
}

int cmd_verify(const RunConfig& c) {
  require(!c.verify_paths.empty(), "verify: no files given");
  std::optional<uint64_t> ensemble_checksum;
  std::vector<std::pair<std::string, uint64_t>> matrix_sources;
  for (const auto& p : c.verify_paths) {
    std::ifstream probe(p, std::ios::binary);
    if (!probe) throw ValidationError("verify: cannot open '" + p + "'");
    char magic[8] = {};
    probe.read(magic, 8);
    probe.close();
    if (std::string(magic, 8) == "LDCMATRX") {
      MatrixFile mf = read_matrix_file(p);  // validates the payload checksum
      std::printf("OK %s: %s matrix, n=%d, K=%d, alpha=%s, ensemble=%s, config=%s\n",
                  p.c_str(), matrix_kind_name(mf.meta.kind), mf.meta.n,
                  mf.meta.num_steps, format_double(mf.meta.alpha).c_str(),
                  hex_u64(mf.meta.ensemble_checksum).c_str(),
                  hex_u64(mf.meta.config_hash).c_str());
      matrix_sources.emplace_back(p, mf.meta.ensemble_checksum);
    } else {
      TrajectoryEnsemble e = load_ensemble(p);
      std::printf("OK %s: ensemble, I=%d, K=%d, dim=%d, checksum=%s\n", p.c_str(),
                  e.num_trajectories(), e.num_steps(), e.dim(),
                  hex_u64(e.checksum()).c_str());
      ensemble_checksum = e.checksum();
    }
  }
  if (ensemble_checksum) {
    for (const auto& [p, cs] : matrix_sources)
      require(cs == *ensemble_checksum,
              "verify: " + p + " was not built from the given ensemble");
  }
  std::printf("verify: all checks passed\n");
  return 0;
}

int run_command(const RunConfig& c) {
  if (c.command == "generate") return cmd_generate(c);
  if (c.command == "rates") return cmd_rates(c);
  if (c.command == "semidist") return cmd_semidist(c);
  if (c.command == "cornerstones") return cmd_cornerstones(c);
  if (c.command == "cluster") return cmd_cluster(c);
  if (c.command == "export-plot") return cmd_export_plot(c);
  if (c.command == "verify") return cmd_verify(c);
  throw ValidationError("unknown command '" + c.command + "'");
}

}  // namespace ldcoh
