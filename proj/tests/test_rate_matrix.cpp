#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ldcoh/common.hpp"
#include "ldcoh/rate_matrix.hpp"

using ldcoh::MatrixKind;
using ldcoh::MatrixMeta;
using ldcoh::RateMatrix;
using ldcoh::ValidationError;
using ldcoh_test::TempDir;

namespace {

RateMatrix sample_matrix() {
  RateMatrix m;
  m.meta.kind = MatrixKind::one_way;
  m.meta.n = 3;
  m.meta.num_steps = 7;
  m.meta.alpha = 0.25;
  m.meta.mean_tau = 0.125;
  m.meta.ensemble_checksum = 0xdeadbeefcafe1234ull;
  m.meta.config_hash = 0x0123456789abcdefull;
  m.meta.labels = {10, 20, 30};
  m.values = {0.0,  0.1,  std::numeric_limits<double>::infinity(),
              0.2,  0.0,  1e-300,
              3e40, 0.75, 0.0};
  return m;
}

std::vector<char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<char>((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

void write_bytes(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE("rate_matrix") {

TEST_CASE("kind names round trip") {
  for (MatrixKind k : {MatrixKind::one_way, MatrixKind::cross, MatrixKind::meet,
                       MatrixKind::l2})
    CHECK(ldcoh::matrix_kind_from_name(ldcoh::matrix_kind_name(k)) == k);
  CHECK(std::string(ldcoh::matrix_kind_name(MatrixKind::one_way)) == "one_way");
  CHECK_THROWS_AS(ldcoh::matrix_kind_from_name("euclidean"), ValidationError);
}

TEST_CASE("binary round trip is bit exact") {
  TempDir tmp("mat");
  auto m = sample_matrix();
  const std::string path = tmp.file("m.bin");
  ldcoh::write_matrix_file(path, m);

  auto back = ldcoh::read_matrix_file(path);
  CHECK(back.meta.kind == m.meta.kind);
  CHECK(back.meta.n == 3);
  CHECK(back.meta.num_steps == 7);
  CHECK(back.meta.alpha == 0.25);
  CHECK(back.meta.mean_tau == 0.125);
  CHECK(back.meta.ensemble_checksum == m.meta.ensemble_checksum);
  CHECK(back.meta.config_hash == m.meta.config_hash);
  CHECK(back.meta.labels == m.meta.labels);
  CHECK(back.meet_via.empty());
  REQUIRE(back.values.size() == m.values.size());
  CHECK(std::memcmp(back.values.data(), m.values.data(),
                    m.values.size() * sizeof(double)) == 0);

  auto rm = ldcoh::read_rate_matrix(path);
  CHECK(rm.at(0, 2) == std::numeric_limits<double>::infinity());
  CHECK(rm.at(2, 0) == 3e40);

  // Writing the identical matrix again produces identical bytes.
  const std::string path2 = tmp.file("m2.bin");
  ldcoh::write_matrix_file(path2, m);
  CHECK(read_bytes(path) == read_bytes(path2));
}

TEST_CASE("meeting labels travel with meet matrices") {
  TempDir tmp("mat");
  ldcoh::SemidistanceMatrix m;
  m.meta.kind = MatrixKind::meet;
  m.meta.n = 2;
  m.meta.num_steps = 1;
  m.meta.labels = {5, 6};
  m.values = {0.0, 1.5, 1.5, 0.0};
  m.meet_via = {0, 1, 1, 1};
  const std::string path = tmp.file("meet.bin");
  ldcoh::write_matrix_file(path, m);
  auto back = ldcoh::read_semidistance_matrix(path);
  CHECK(back.meet_via == m.meet_via);
  CHECK(back.values == m.values);
  CHECK(back.meta.kind == MatrixKind::meet);
}

TEST_CASE("header bytes are pinned") {
  TempDir tmp("mat");
  auto m = sample_matrix();
  const std::string path = tmp.file("m.bin");
  ldcoh::write_matrix_file(path, m);
  auto bytes = read_bytes(path);

  // 72-byte header, 3 labels, 9 values.
  CHECK(bytes.size() == 72 + 3 * 8 + 9 * 8);
  CHECK(std::memcmp(bytes.data(), "LDCMATRX", 8) == 0);
  uint32_t version, kind;
  std::memcpy(&version, bytes.data() + 8, 4);
  std::memcpy(&kind, bytes.data() + 12, 4);
  CHECK(version == 1);
  CHECK(kind == 0);
  int32_t n, steps;
  std::memcpy(&n, bytes.data() + 16, 4);
  std::memcpy(&steps, bytes.data() + 20, 4);
  CHECK(n == 3);
  CHECK(steps == 7);
  double alpha;
  std::memcpy(&alpha, bytes.data() + 24, 8);
  CHECK(alpha == 0.25);
  int64_t first_label;
  std::memcpy(&first_label, bytes.data() + 72, 8);
  CHECK(first_label == 10);
}

TEST_CASE("corruption and truncation are detected") {
  TempDir tmp("mat");
  auto m = sample_matrix();
  const std::string path = tmp.file("m.bin");
  ldcoh::write_matrix_file(path, m);
  auto pristine = read_bytes(path);

  // Flip one payload byte: checksum must catch it.
  auto corrupt = pristine;
  corrupt[corrupt.size() - 5] ^= 0x40;
  write_bytes(path, corrupt);
  CHECK_THROWS_WITH_AS(ldcoh::read_matrix_file(path),
                       doctest::Contains("payload checksum mismatch"), ValidationError);

  // Drop the last value: truncated.
  auto shorter = pristine;
  shorter.resize(shorter.size() - 8);
  write_bytes(path, shorter);
  CHECK_THROWS_WITH_AS(ldcoh::read_matrix_file(path), doctest::Contains("truncated"),
                       ValidationError);

  // Wrong magic: not a matrix file.
  auto other = pristine;
  other[0] = 'X';
  write_bytes(path, other);
  CHECK_THROWS_WITH_AS(ldcoh::read_matrix_file(path),
                       doctest::Contains("is not a matrix file"), ValidationError);

  // Future version: refused.
  auto vnext = pristine;
  vnext[8] = 2;
  write_bytes(path, vnext);
  CHECK_THROWS_WITH_AS(ldcoh::read_matrix_file(path),
                       doctest::Contains("unsupported version"), ValidationError);

  CHECK_THROWS_WITH_AS(ldcoh::read_matrix_file(tmp.file("ghost.bin")),
                       doctest::Contains("cannot open"), ValidationError);
}

TEST_CASE("readers and writers enforce the kind") {
  TempDir tmp("mat");
  auto m = sample_matrix();
  m.meta.kind = MatrixKind::cross;
  // The typed rate overload refuses to write a derived kind at all.
  CHECK_THROWS_AS(ldcoh::write_matrix_file(tmp.file("no.bin"), m), ValidationError);

  const std::string path = tmp.file("c.bin");
  ldcoh::write_matrix_file(path, m.meta, m.values, nullptr);
  CHECK_THROWS_WITH_AS(ldcoh::read_rate_matrix(path), doctest::Contains("one_way"),
                       ValidationError);
  CHECK_NOTHROW(ldcoh::read_semidistance_matrix(path));

  m.meta.kind = MatrixKind::one_way;
  const std::string rpath = tmp.file("r.bin");
  ldcoh::write_matrix_file(rpath, m);
  CHECK_THROWS_WITH_AS(ldcoh::read_semidistance_matrix(rpath),
                       doctest::Contains("semidistance"), ValidationError);
}

TEST_CASE("csv export format is stable") {
  TempDir tmp("mat");
  MatrixMeta meta;
  meta.kind = MatrixKind::cross;
  meta.n = 2;
  meta.num_steps = 3;
  meta.alpha = 0.5;
  meta.mean_tau = 0.5;
  meta.ensemble_checksum = 0x10;
  meta.config_hash = 0x20;
  meta.labels = {7, 9};
  std::vector<double> values = {0.0, 0.5, 0.5, 0.0};
  const std::string path = tmp.file("m.csv");
  ldcoh::write_matrix_csv(path, meta, values);
  std::string text = ldcoh_test::slurp(path);
  CHECK(text.find("# kind=cross n=2 num_steps=3 alpha=0.5 mean_tau=0.5") !=
        std::string::npos);
  CHECK(text.find("ensemble_checksum=0x0000000000000010") != std::string::npos);
  CHECK(text.find("label,7,9") != std::string::npos);
  CHECK(text.find("7,0,0.5\n") != std::string::npos);
  CHECK(text.find("9,0.5,0\n") != std::string::npos);
}

}  // TEST_SUITE
