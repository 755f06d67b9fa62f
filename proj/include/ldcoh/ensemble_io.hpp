#pragma once

#include <optional>
#include <string>

#include "ldcoh/ensemble.hpp"

namespace ldcoh {

// Trajectory table layout:
//   csv: header "traj_id,time_index,x1,...,xd", one row per observed sample,
//        sorted by (traj_id, time_index), floats at 17 significant digits.
//        Missing samples are simply absent rows. Time metadata travels in a
//        JSON sidecar next to the table ("<base>.meta.json").
//   json: single file {dim, times, periods, trajectories: {id: {k: [x...]}}}.

// "<path minus .csv>.meta.json"
std::string meta_path_for(const std::string& csv_path);

void save_ensemble_csv(const std::string& path, const TrajectoryEnsemble& e,
                       uint64_t config_hash = 0);
TrajectoryEnsemble load_ensemble_csv(const std::string& path);
// Bare table without a sidecar: caller supplies the metadata.
TrajectoryEnsemble load_ensemble_csv(const std::string& path, Geometry geom,
                                     TimeGrid grid);

void save_ensemble_json(const std::string& path, const TrajectoryEnsemble& e,
                        uint64_t config_hash = 0);
TrajectoryEnsemble load_ensemble_json(const std::string& path);

// Sniffs the format: files whose first non-space byte is '{' are JSON.
TrajectoryEnsemble load_ensemble(const std::string& path);

}  // namespace ldcoh
