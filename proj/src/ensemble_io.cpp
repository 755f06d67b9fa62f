#include "ldcoh/ensemble_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ldcoh/common.hpp"

namespace ldcoh {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ValidationError(where + ": bad number '" + s + "'");
  return v;
}

int64_t parse_i64(const std::string& s, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ValidationError(where + ": bad integer '" + s + "'");
  return v;
}

json geometry_to_json(const Geometry& g) {
  json periods = json::array();
  for (const auto& p : g.periods) {
    if (p)
      periods.push_back(*p);
    else
      periods.push_back(nullptr);
  }
  return periods;
}

Geometry geometry_from_json(int dim, const json& periods, const std::string& where) {
  if (!periods.is_array() || static_cast<int>(periods.size()) != dim)
    throw ValidationError(where + ": periods must list one entry per axis");
  std::vector<std::optional<double>> ps;
  for (const auto& p : periods) {
    if (p.is_null())
      ps.emplace_back(std::nullopt);
    else if (p.is_number())
      ps.emplace_back(p.get<double>());
    else
      throw ValidationError(where + ": period entries must be numbers or null");
  }
  return Geometry(dim, std::move(ps));
}

struct Sample {
  int64_t id;
  int k;
  std::vector<double> x;
};

TrajectoryEnsemble assemble(Geometry geom, TimeGrid grid, std::vector<Sample> rows) {
  std::vector<int64_t> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back(r.id);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  EnsembleBuilder b(std::move(geom), std::move(grid), std::move(labels));
  for (const auto& r : rows) b.set(r.id, r.k, r.x);
  return b.build();
}

}  // namespace

std::string meta_path_for(const std::string& csv_path) {
  if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
    return csv_path.substr(0, csv_path.size() - 4) + ".meta.json";
  return csv_path + ".meta.json";
}

void save_ensemble_csv(const std::string& path, const TrajectoryEnsemble& e,
                       uint64_t config_hash) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("ensemble save: cannot open '" + path + "'");
  const int dim = e.dim();
  out << "traj_id,time_index";
  for (int d = 0; d < dim; ++d) out << ",x" << (d + 1);
  out << "\n";
  for (int i = 0; i < e.num_trajectories(); ++i) {
    for (int k = 0; k < e.grid().num_slices(); ++k) {
      if (!e.is_present(i, k)) continue;
      out << e.labels()[i] << "," << k;
      auto x = e.position(i, k);
      for (int d = 0; d < dim; ++d) out << "," << format_double(x[d]);
      out << "\n";
    }
  }
  if (!out) throw ValidationError("ensemble save: short write to '" + path + "'");

  json meta;
  meta["format_version"] = 1;
  meta["dim"] = dim;
  meta["times"] = e.grid().times();
  meta["periods"] = geometry_to_json(e.geometry());
  meta["ensemble_checksum"] = hex_u64(e.checksum());
  meta["config_hash"] = hex_u64(config_hash);
  std::ofstream mout(meta_path_for(path), std::ios::trunc);
  if (!mout) throw ValidationError("ensemble save: cannot open sidecar for '" + path + "'");
  mout << meta.dump(2) << "\n";
}

TrajectoryEnsemble load_ensemble_csv(const std::string& path, Geometry geom,
                                     TimeGrid grid) {
  std::ifstream in(path);
  if (!in) throw ValidationError("ensemble load: cannot open '" + path + "'");
  const int dim = geom.dim;
  std::string line;
  int lineno = 0;
  // header
  for (;;) {
    if (!std::getline(in, line))
      throw ValidationError(path + ": empty trajectory table");
    ++lineno;
    if (!line.empty() && line[0] != '#') break;
  }
  auto head = split_csv_line(line);
  if (static_cast<int>(head.size()) != dim + 2 || head[0] != "traj_id" ||
      head[1] != "time_index")
    throw ValidationError(path + ":" + std::to_string(lineno) +
                          ": header must be traj_id,time_index,x1,...,x" +
                          std::to_string(dim));
  std::vector<Sample> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = split_csv_line(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (static_cast<int>(f.size()) != dim + 2)
      throw ValidationError(where + ": expected " + std::to_string(dim + 2) +
                            " fields, got " + std::to_string(f.size()));
    Sample s;
    s.id = parse_i64(f[0], where);
    int64_t k = parse_i64(f[1], where);
    if (k < 0 || k >= grid.num_slices())
      throw ValidationError(where + ": time_index " + std::to_string(k) +
                            " outside the grid");
    s.k = static_cast<int>(k);
    s.x.resize(dim);
    for (int d = 0; d < dim; ++d) s.x[d] = parse_double(f[2 + d], where);
    rows.push_back(std::move(s));
  }
  if (rows.empty()) throw ValidationError(path + ": no samples");
  return assemble(std::move(geom), std::move(grid), std::move(rows));
}

TrajectoryEnsemble load_ensemble_csv(const std::string& path) {
  const std::string mpath = meta_path_for(path);
  std::ifstream min(mpath);
  if (!min)
    throw ValidationError("ensemble load: missing sidecar '" + mpath +
                          "'; supply the time grid explicitly");
  json meta;
  try {
    min >> meta;
  } catch (const json::exception& ex) {
    throw ValidationError(mpath + ": " + ex.what());
  }
  if (!meta.contains("dim") || !meta.contains("times") || !meta.contains("periods"))
    throw ValidationError(mpath + ": sidecar needs dim, times and periods");
  int dim = meta["dim"].get<int>();
  if (dim < 1) throw ValidationError(mpath + ": bad dimension");
  std::vector<double> times = meta["times"].get<std::vector<double>>();
  Geometry geom = geometry_from_json(dim, meta["periods"], mpath);
  return load_ensemble_csv(path, std::move(geom), TimeGrid(std::move(times)));
}

void save_ensemble_json(const std::string& path, const TrajectoryEnsemble& e,
                        uint64_t config_hash) {
  json j;
  j["format_version"] = 1;
  j["dim"] = e.dim();
  j["times"] = e.grid().times();
  j["periods"] = geometry_to_json(e.geometry());
  j["ensemble_checksum"] = hex_u64(e.checksum());
  j["config_hash"] = hex_u64(config_hash);
  json trajs = json::object();
  for (int i = 0; i < e.num_trajectories(); ++i) {
    json t = json::object();
    for (int k = 0; k < e.grid().num_slices(); ++k) {
      if (!e.is_present(i, k)) continue;
      auto x = e.position(i, k);
      t[std::to_string(k)] = std::vector<double>(x.begin(), x.end());
    }
    trajs[std::to_string(e.labels()[i])] = std::move(t);
  }
  j["trajectories"] = std::move(trajs);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("ensemble save: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw ValidationError("ensemble save: short write to '" + path + "'");
}

TrajectoryEnsemble load_ensemble_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("ensemble load: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ValidationError(path + ": " + ex.what());
  }
  for (const char* key : {"dim", "times", "periods", "trajectories"})
    if (!j.contains(key))
      throw ValidationError(path + ": missing field '" + std::string(key) + "'");
  int dim = j["dim"].get<int>();
  if (dim < 1) throw ValidationError(path + ": bad dimension");
  std::vector<double> times = j["times"].get<std::vector<double>>();
  Geometry geom = geometry_from_json(dim, j["periods"], path);
  TimeGrid grid{std::move(times)};

  std::vector<Sample> rows;
  for (const auto& [id_str, t] : j["trajectories"].items()) {
    int64_t id = parse_i64(id_str, path + ": trajectory id");
    if (!t.is_object())
      throw ValidationError(path + ": trajectory " + id_str + " must map time to point");
    for (const auto& [k_str, x] : t.items()) {
      Sample s;
      s.id = id;
      int64_t k = parse_i64(k_str, path + ": time index of trajectory " + id_str);
      if (k < 0 || k >= grid.num_slices())
        throw ValidationError(path + ": time index " + k_str + " outside the grid");
      s.k = static_cast<int>(k);
      if (!x.is_array() || static_cast<int>(x.size()) != dim)
        throw ValidationError(path + ": trajectory " + id_str + " at " + k_str +
                              " needs " + std::to_string(dim) + " coordinates");
      s.x = x.get<std::vector<double>>();
      rows.push_back(std::move(s));
    }
  }
  if (rows.empty()) throw ValidationError(path + ": no samples");
  return assemble(std::move(geom), std::move(grid), std::move(rows));
}

TrajectoryEnsemble load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("ensemble load: cannot open '" + path + "'");
  char c;
  while (in.get(c)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    break;
  }
  in.close();
  if (c == '{') return load_ensemble_json(path);
  return load_ensemble_csv(path);
}

}  // namespace ldcoh
