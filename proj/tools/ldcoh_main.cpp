// Command-line front end: trajectory ensembles from benchmark flows,
// one-way transport rates, semidistances, cornerstones and fuzzy clusters.
#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "ldcoh/commands.hpp"
#include "ldcoh/common.hpp"

int main(int argc, char** argv) {
  using ldcoh::RunConfig;
  CLI::App app{"transport-cost semidistances between trajectories and coherent-set detection"};
  app.require_subcommand(1);

  RunConfig c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "worker threads (0: LDCOH_WORKERS env, then hardware)");
  };

  auto* gen = app.add_subcommand("generate", "integrate a benchmark flow into a trajectory table");
  gen->add_option("--flow", c.flow,
                  "zero_flow | double_gyre | rotating_double_gyre | bickley_jet | "
                  "map_two_mixing | map_static_mixing_static")
      ->required();
  gen->add_option("--profile", c.profile, "ci | full (default full): preset grid sizes");
  gen->add_option("--grid", c.grid_counts, "seed cells per axis (cell-centred)");
  gen->add_option("-K,--num-steps", c.num_steps, "observation steps");
  gen->add_option("--tau", c.tau, "step length");
  gen->add_option("--t0", c.t0, "initial time");
  gen->add_option("--substeps", c.substeps, "integrator substeps per observation step");
  gen->add_option("--seed-mode", c.seed_mode, "grid | random");
  gen->add_option("--random-n", c.random_n, "random seed count");
  gen->add_option("--seed", c.seed, "rng stream for random seeding");
  gen->add_option("--out", c.out, "output table (.csv with sidecar, or .json)")->required();
  add_common(gen);

  auto* rates = app.add_subcommand("rates", "all-pairs one-way transport rates");
  rates->add_option("--ensemble", c.ensemble_path, "trajectory table")->required();
  rates->add_option("--alpha", c.alpha, "hop cost split in (0,1), default 0.5");
  rates->add_option("--solver", c.solver, "dense | reached");
  rates->add_flag("--prune", c.prune, "exact candidate pruning in the dense solver");
  rates->add_option("--out", c.out, "rate matrix file")->required();
  rates->add_option("--csv", c.csv_out, "also export the matrix as csv");
  add_common(rates);

  auto* semi = app.add_subcommand("semidist", "symmetrise rates or build the l2 baseline");
  semi->add_option("--kind", c.kind, "cross | meet | l2")->required();
  semi->add_option("--rates", c.rates_path, "rate matrix (cross/meet)");
  semi->add_option("--ensemble", c.ensemble_path, "trajectory table (l2)");
  semi->add_option("--out", c.out, "semidistance matrix file")->required();
  semi->add_option("--csv", c.csv_out, "also export the matrix as csv");
  add_common(semi);

  auto* corner = app.add_subcommand("cornerstones", "farthest-point cornerstone search");
  corner->add_option("--matrix", c.matrix_path, "semidistance matrix")->required();
  corner->add_option("--max-q", c.max_q, "cornerstones to search (default 8)");
  int64_t c0 = 0;
  auto* c0_opt = corner->add_option("--c0", c0, "explicit seed trajectory label");
  corner->add_option("--seed", c.seed, "rng stream for the random seed pick");
  corner->add_option("--stop-factor", c.stop_factor, "drop factor of the stopping rule");
  corner->add_option("--units", c.units, "raw | per-tau");
  corner->add_option("--out", c.out, "result json")->required();
  add_common(corner);

  auto* cluster = app.add_subcommand("cluster", "hard clusters and fuzzy affiliations");
  cluster->add_option("--matrix", c.matrix_path, "semidistance matrix")->required();
  cluster->add_option("--cornerstones", c.cornerstones_path, "cornerstones json")->required();
  cluster->add_option("--ensemble", c.ensemble_path, "trajectory table for positions")->required();
  cluster->add_option("-q", c.max_q, "cornerstones to keep (default: stop-rule suggestion)");
  cluster->add_option("-m,--fuzzifier", c.fuzzifier, "fuzziness exponent m > 1 (default 2)");
  cluster->add_option("--slice", c.slice, "time slice for exported positions");
  cluster->add_option("--out", c.out, "output prefix (.csv and .json)")->required();
  add_common(cluster);

  auto* expl = app.add_subcommand("export-plot", "matrix row with positions at a time slice");
  expl->add_option("--matrix", c.matrix_path, "matrix file")->required();
  expl->add_option("--ensemble", c.ensemble_path, "trajectory table")->required();
  expl->add_option("--from", c.from_label, "reference trajectory label")->required();
  expl->add_option("--slice", c.slice, "time slice");
  expl->add_option("--units", c.units, "raw | per-tau");
  expl->add_option("--out", c.out, "output csv")->required();
  add_common(expl);

  auto* verify = app.add_subcommand("verify", "re-check checksums of stored artifacts");
  verify->add_option("files", c.verify_paths, "artifact files")->required();

  // cluster keeps 0 = "use the stop-rule suggestion"
  c.max_q = 8;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) c.command = "generate";
    if (rates->parsed()) c.command = "rates";
    if (semi->parsed()) c.command = "semidist";
    if (corner->parsed()) {
      c.command = "cornerstones";
      if (c0_opt->count() > 0) c.c0_label = c0;
    }
    if (cluster->parsed()) {
      c.command = "cluster";
      if (cluster->count("-q") == 0) c.max_q = 0;
    }
    if (expl->parsed()) c.command = "export-plot";
    if (verify->parsed()) c.command = "verify";
    return ldcoh::run_command(c);
  } catch (const ldcoh::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
