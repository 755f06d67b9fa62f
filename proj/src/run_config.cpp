#include "ldcoh/run_config.hpp"

#include <fstream>

#include <json.hpp>

#include "ldcoh/common.hpp"

namespace ldcoh {

namespace {
using nlohmann::json;

json semantic_json(const RunConfig& c, const InputFingerprints& inputs) {
  json j;
  j["command"] = c.command;
  if (c.command == "generate") {
    j["flow"] = c.flow;
    j["profile"] = c.profile;
    j["grid_counts"] = c.grid_counts;
    j["num_steps"] = c.num_steps;
    j["tau"] = c.tau;
    j["t0"] = c.t0;
    j["substeps"] = c.substeps;
    j["seed_mode"] = c.seed_mode;
    j["random_n"] = c.random_n;
    j["seed"] = c.seed;
  } else if (c.command == "rates") {
    j["alpha"] = c.alpha;
    j["solver"] = c.solver;
    j["prune"] = c.prune;
  } else if (c.command == "semidist") {
    j["kind"] = c.kind;
  } else if (c.command == "cornerstones") {
    j["max_q"] = c.max_q;
    j["seed"] = c.seed;
    if (c.c0_label) j["c0_label"] = *c.c0_label;
    j["stop_factor"] = c.stop_factor;
    j["units"] = c.units;
  } else if (c.command == "cluster") {
    j["fuzzifier"] = c.fuzzifier;
    j["max_q"] = c.max_q;
    j["slice"] = c.slice;
  } else if (c.command == "export-plot") {
    j["from_label"] = c.from_label;
    j["slice"] = c.slice;
    j["units"] = c.units;
  }
  json in = json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = std::move(in);
  return j;
}
}  // namespace

void RunConfig::validate_common() const {
  if (units != "raw" && units != "per-tau")
    throw ValidationError("units must be 'raw' or 'per-tau'");
  if (profile != "ci" && profile != "full")
    throw ValidationError("profile must be 'ci' or 'full'");
}

std::string run_config_canonical(const RunConfig& c, const InputFingerprints& inputs) {
  return semantic_json(c, inputs).dump();
}

uint64_t run_config_hash(const RunConfig& c, const InputFingerprints& inputs) {
  const std::string s = run_config_canonical(c, inputs);
  return fnv1a(s.data(), s.size());
}

void write_run_config(const std::string& path, const RunConfig& c,
                      const InputFingerprints& inputs, uint64_t hash) {
  json j = semantic_json(c, inputs);
  j["config_hash"] = hex_u64(hash);
  j["workers"] = c.workers;
  json paths = json::object();
  if (!c.ensemble_path.empty()) paths["ensemble"] = c.ensemble_path;
  if (!c.rates_path.empty()) paths["rates"] = c.rates_path;
  if (!c.matrix_path.empty()) paths["matrix"] = c.matrix_path;
  if (!c.cornerstones_path.empty()) paths["cornerstones"] = c.cornerstones_path;
  if (!c.out.empty()) paths["out"] = c.out;
  if (!c.csv_out.empty()) paths["csv_out"] = c.csv_out;
  j["paths"] = std::move(paths);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("config write: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
}

std::string config_path_for(const std::string& out_path) {
  auto slash = out_path.find_last_of('/');
  auto dot = out_path.find_last_of('.');
  std::string base = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                         ? out_path.substr(0, dot)
                         : out_path;
  return base + ".config.json";
}

}  // namespace ldcoh
