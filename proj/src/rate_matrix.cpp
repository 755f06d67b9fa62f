#include "ldcoh/rate_matrix.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "ldcoh/common.hpp"

static_assert(std::endian::native == std::endian::little,
              "matrix container is defined little-endian");

namespace ldcoh {

namespace {

constexpr char kMagic[8] = {'L', 'D', 'C', 'M', 'A', 'T', 'R', 'X'};
constexpr uint32_t kVersion = 1;

struct RawHeader {
  char magic[8];
  uint32_t version;
  uint32_t kind;
  int32_t n;
  int32_t num_steps;
  double alpha;
  double mean_tau;
  uint64_t ensemble_checksum;
  uint64_t config_hash;
  uint32_t has_meet_via;
  uint32_t reserved;
  uint64_t payload_checksum;
};
static_assert(sizeof(RawHeader) == 72);

uint64_t payload_checksum(const std::vector<int64_t>& labels,
                          const std::vector<int32_t>* meet_via,
                          const std::vector<double>& values) {
  Fnv1a h;
  h.update(labels.data(), labels.size() * sizeof(int64_t));
  if (meet_via && !meet_via->empty())
    h.update(meet_via->data(), meet_via->size() * sizeof(int32_t));
  h.update(values.data(), values.size() * sizeof(double));
  return h.digest();
}

}  // namespace

const char* matrix_kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::one_way: return "one_way";
    case MatrixKind::cross: return "cross";
    case MatrixKind::meet: return "meet";
    case MatrixKind::l2: return "l2";
  }
  return "unknown";
}

MatrixKind matrix_kind_from_name(const std::string& name) {
  if (name == "one_way") return MatrixKind::one_way;
  if (name == "cross") return MatrixKind::cross;
  if (name == "meet") return MatrixKind::meet;
  if (name == "l2") return MatrixKind::l2;
  throw ValidationError("unknown matrix kind '" + name + "'");
}

void write_matrix_file(const std::string& path, const MatrixMeta& meta,
                       const std::vector<double>& values,
                       const std::vector<int32_t>* meet_via) {
  const size_t n = static_cast<size_t>(meta.n);
  if (meta.n <= 0 || values.size() != n * n)
    throw ValidationError("matrix write: value count does not match size");
  if (meta.labels.size() != n)
    throw ValidationError("matrix write: label count does not match size");
  if (meet_via && !meet_via->empty() && meet_via->size() != n * n)
    throw ValidationError("matrix write: meeting-label count does not match size");

  RawHeader h{};
  std::memcpy(h.magic, kMagic, 8);
  h.version = kVersion;
  h.kind = static_cast<uint32_t>(meta.kind);
  h.n = meta.n;
  h.num_steps = meta.num_steps;
  h.alpha = meta.alpha;
  h.mean_tau = meta.mean_tau;
  h.ensemble_checksum = meta.ensemble_checksum;
  h.config_hash = meta.config_hash;
  h.has_meet_via = meet_via && !meet_via->empty() ? 1 : 0;
  h.payload_checksum = payload_checksum(meta.labels, meet_via, values);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("matrix write: cannot open '" + path + "'");
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(meta.labels.data()),
            static_cast<std::streamsize>(n * sizeof(int64_t)));
  if (h.has_meet_via)
    out.write(reinterpret_cast<const char*>(meet_via->data()),
              static_cast<std::streamsize>(n * n * sizeof(int32_t)));
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(n * n * sizeof(double)));
  if (!out) throw ValidationError("matrix write: short write to '" + path + "'");
}

void write_matrix_file(const std::string& path, const RateMatrix& m) {
  if (m.meta.kind != MatrixKind::one_way)
    throw ValidationError("matrix write: rate matrix must have kind one_way");
  write_matrix_file(path, m.meta, m.values, nullptr);
}

void write_matrix_file(const std::string& path, const SemidistanceMatrix& m) {
  if (m.meta.kind == MatrixKind::one_way)
    throw ValidationError("matrix write: semidistance matrix cannot be one_way");
  write_matrix_file(path, m.meta, m.values,
                    m.meta.kind == MatrixKind::meet ? &m.meet_via : nullptr);
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("matrix read: cannot open '" + path + "'");
  RawHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, 8) != 0)
    throw ValidationError("matrix read: '" + path + "' is not a matrix file");
  if (h.version != kVersion)
    throw ValidationError("matrix read: unsupported version in '" + path + "'");
  if (h.n <= 0) throw ValidationError("matrix read: corrupt size in '" + path + "'");
  if (h.kind > 3) throw ValidationError("matrix read: corrupt kind in '" + path + "'");

  MatrixFile mf;
  mf.meta.kind = static_cast<MatrixKind>(h.kind);
  mf.meta.n = h.n;
  mf.meta.num_steps = h.num_steps;
  mf.meta.alpha = h.alpha;
  mf.meta.mean_tau = h.mean_tau;
  mf.meta.ensemble_checksum = h.ensemble_checksum;
  mf.meta.config_hash = h.config_hash;

  const size_t n = static_cast<size_t>(h.n);
  mf.meta.labels.resize(n);
  in.read(reinterpret_cast<char*>(mf.meta.labels.data()),
          static_cast<std::streamsize>(n * sizeof(int64_t)));
  if (h.has_meet_via) {
    mf.meet_via.resize(n * n);
    in.read(reinterpret_cast<char*>(mf.meet_via.data()),
            static_cast<std::streamsize>(n * n * sizeof(int32_t)));
  }
  mf.values.resize(n * n);
  in.read(reinterpret_cast<char*>(mf.values.data()),
          static_cast<std::streamsize>(n * n * sizeof(double)));
  if (!in) throw ValidationError("matrix read: truncated file '" + path + "'");

  uint64_t expect = payload_checksum(mf.meta.labels,
                                     mf.meet_via.empty() ? nullptr : &mf.meet_via,
                                     mf.values);
  if (expect != h.payload_checksum)
    throw ValidationError("matrix read: payload checksum mismatch in '" + path + "'");
  return mf;
}

RateMatrix read_rate_matrix(const std::string& path) {
  MatrixFile mf = read_matrix_file(path);
  if (mf.meta.kind != MatrixKind::one_way)
    throw ValidationError("matrix read: expected one_way rates in '" + path + "'");
  return RateMatrix{std::move(mf.meta), std::move(mf.values)};
}

SemidistanceMatrix read_semidistance_matrix(const std::string& path) {
  MatrixFile mf = read_matrix_file(path);
  if (mf.meta.kind == MatrixKind::one_way)
    throw ValidationError("matrix read: expected a semidistance matrix in '" + path + "'");
  return SemidistanceMatrix{std::move(mf.meta), std::move(mf.values),
                            std::move(mf.meet_via)};
}

void write_matrix_csv(const std::string& path, const MatrixMeta& meta,
                      const std::vector<double>& values) {
  const size_t n = static_cast<size_t>(meta.n);
  if (values.size() != n * n)
    throw ValidationError("matrix csv: value count does not match size");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("matrix csv: cannot open '" + path + "'");
  out << "# kind=" << matrix_kind_name(meta.kind) << " n=" << meta.n
      << " num_steps=" << meta.num_steps << " alpha=" << format_double(meta.alpha)
      << " mean_tau=" << format_double(meta.mean_tau)
      << " ensemble_checksum=" << hex_u64(meta.ensemble_checksum)
      << " config_hash=" << hex_u64(meta.config_hash) << "\n";
  out << "label";
  for (size_t j = 0; j < n; ++j) out << "," << meta.labels[j];
  out << "\n";
  for (size_t i = 0; i < n; ++i) {
    out << meta.labels[i];
    for (size_t j = 0; j < n; ++j) out << "," << format_double(values[i * n + j]);
    out << "\n";
  }
  if (!out) throw ValidationError("matrix csv: short write to '" + path + "'");
}

}  // namespace ldcoh
