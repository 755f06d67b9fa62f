#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ldcoh {

enum class MatrixKind : uint32_t {
  one_way = 0,  // asymmetric source -> target rates
  cross = 1,    // r(i,j) + r(j,i)
  meet = 2,     // min over l of r(i,l) + r(j,l)
  l2 = 3,       // time-summed squared trajectory separation
};

const char* matrix_kind_name(MatrixKind k);
MatrixKind matrix_kind_from_name(const std::string& name);

// Shared header for every persisted matrix.
struct MatrixMeta {
  MatrixKind kind = MatrixKind::one_way;
  int32_t n = 0;          // trajectories (rows == cols)
  int32_t num_steps = 0;  // K of the producing ensemble
  double alpha = 0.5;
  double mean_tau = 1.0;  // reporting scale for per-tau units
  uint64_t ensemble_checksum = 0;
  uint64_t config_hash = 0;
  std::vector<int64_t> labels;  // external ids, size n
};

struct RateMatrix {
  MatrixMeta meta;
  std::vector<double> values;  // row-major, values[i*n + j] = rate i -> j

  double at(int i, int j) const { return values[static_cast<size_t>(i) * meta.n + j]; }
  double& at(int i, int j) { return values[static_cast<size_t>(i) * meta.n + j]; }
};

struct SemidistanceMatrix {
  MatrixMeta meta;
  std::vector<double> values;     // row-major, symmetric
  std::vector<int32_t> meet_via;  // meet kind only: argmin meeting label, -1 if none

  double at(int i, int j) const { return values[static_cast<size_t>(i) * meta.n + j]; }
  double& at(int i, int j) { return values[static_cast<size_t>(i) * meta.n + j]; }
};

// Dense little-endian binary container: fixed header, label table, optional
// meeting-label table, row-major float64 payload, all checksummed.
void write_matrix_file(const std::string& path, const MatrixMeta& meta,
                       const std::vector<double>& values,
                       const std::vector<int32_t>* meet_via);
void write_matrix_file(const std::string& path, const RateMatrix& m);
void write_matrix_file(const std::string& path, const SemidistanceMatrix& m);

struct MatrixFile {
  MatrixMeta meta;
  std::vector<double> values;
  std::vector<int32_t> meet_via;
};
MatrixFile read_matrix_file(const std::string& path);
RateMatrix read_rate_matrix(const std::string& path);          // requires one_way
SemidistanceMatrix read_semidistance_matrix(const std::string& path);

// Flat text export: comment header with the metadata, then one labelled row
// per line with 17-significant-digit values.
void write_matrix_csv(const std::string& path, const MatrixMeta& meta,
                      const std::vector<double>& values);

}  // namespace ldcoh
