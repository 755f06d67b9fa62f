#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ldcoh {

// Everything a CLI invocation needs, in one record. The canonical hash covers
// the semantic fields plus content fingerprints of the input files; it
// excludes worker count and file paths, so reruns of the same computation
// produce byte-identical artifacts wherever they live and however they are
// parallelised.
struct RunConfig {
  std::string command;

  // generate
  std::string flow;
  std::string profile = "full";  // ci | full
  std::vector<int> grid_counts;  // empty: profile preset
  int num_steps = 0;             // 0: profile preset
  double tau = 0.0;              // 0: profile preset
  double t0 = 0.0;
  int substeps = 10;
  std::string seed_mode = "grid";  // grid | random
  int random_n = 0;
  uint64_t seed = 0;

  // rates / semidist
  std::string ensemble_path;
  std::string rates_path;
  std::string matrix_path;
  double alpha = 0.5;
  std::string solver = "dense";  // dense | reached
  bool prune = false;
  std::string kind;  // cross | meet | l2

  // cornerstones / cluster / export-plot
  int max_q = 8;
  std::optional<int64_t> c0_label;
  double stop_factor = 2.0;
  double fuzzifier = 2.0;
  std::string cornerstones_path;
  int slice = 0;
  int64_t from_label = 0;

  // reporting and execution
  std::string units = "raw";  // raw | per-tau
  int workers = 0;            // 0: LDCOH_WORKERS env, then hardware
  std::string out;
  std::string csv_out;
  std::vector<std::string> verify_paths;

  void validate_common() const;
};

// Content fingerprints of the inputs, keyed by role ("ensemble", "matrix", ...).
using InputFingerprints = std::map<std::string, std::string>;

// Canonical JSON of the semantic configuration (hash input).
std::string run_config_canonical(const RunConfig& c, const InputFingerprints& inputs);
uint64_t run_config_hash(const RunConfig& c, const InputFingerprints& inputs);

// Verbatim record written next to outputs: full configuration, including
// paths and worker count, plus the canonical hash.
void write_run_config(const std::string& path, const RunConfig& c,
                      const InputFingerprints& inputs, uint64_t hash);

// "<path minus last extension>.config.json"
std::string config_path_for(const std::string& out_path);

}  // namespace ldcoh
