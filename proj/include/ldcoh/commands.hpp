#pragma once

#include "ldcoh/run_config.hpp"

namespace ldcoh {

// CLI entry points; each validates, computes, writes artifacts plus a
// .config.json record, and returns the process exit code (0 on success).
// Validation failures throw ValidationError (exit 2), compute failures
// ComputeError (exit 3); the caller maps exceptions to codes.
int cmd_generate(const RunConfig& c);
int cmd_rates(const RunConfig& c);
int cmd_semidist(const RunConfig& c);
int cmd_cornerstones(const RunConfig& c);
int cmd_cluster(const RunConfig& c);
int cmd_export_plot(const RunConfig& c);
int cmd_verify(const RunConfig& c);

int run_command(const RunConfig& c);  // dispatch on c.command

}  // namespace ldcoh
