#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "ldcoh/rate_matrix.hpp"
#include "ldcoh/semidistance.hpp"

using ldcoh_test::TempDir;
using ldcoh_test::slurp;
using nlohmann::json;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(LDCOH_CLI_PATH) + " " + args;
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool file_exists(const std::string& p) { return std::ifstream(p).good(); }

// Last comma-separated field of each data line (skipping '#' and the header).
std::vector<double> last_column(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<double> vals;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    vals.push_back(std::strtod(line.substr(line.rfind(',') + 1).c_str(), nullptr));
  }
  return vals;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("argument plumbing and exit codes") {
  TempDir tmp("cli");
  CHECK(run("--help > /dev/null") == 0);
  CHECK(run("> /dev/null 2>&1") == 2);                 // subcommand required
  CHECK(run("generate --flow nope --out " + tmp.file("x.csv") + " 2> /dev/null") == 2);
  CHECK(run("generate --out " + tmp.file("x.csv") + " 2> /dev/null") == 2);
  CHECK(run("frobnicate 2> /dev/null") == 2);
  CHECK(run("rates --ensemble " + tmp.file("missing.csv") + " --out " +
            tmp.file("r.bin") + " 2> /dev/null") == 2);
}

TEST_CASE("the full pipeline runs and its artifacts interoperate") {
  TempDir tmp("cli");
  const std::string e = tmp.file("e.csv");
  const std::string r = tmp.file("r.bin");
  const std::string rcsv = tmp.file("r.csv");
  const std::string meet = tmp.file("meet.bin");
  const std::string cross = tmp.file("cross.bin");
  const std::string l2 = tmp.file("l2.bin");
  const std::string corner = tmp.file("corner.json");
  const std::string clus = tmp.file("clus");
  const std::string plot = tmp.file("plot.csv");

  REQUIRE(run("generate --flow map_two_mixing --grid 10 -K 6 --out " + e +
              " > /dev/null") == 0);
  CHECK(file_exists(e));
  CHECK(file_exists(tmp.file("e.meta.json")));
  CHECK(file_exists(tmp.file("e.config.json")));

  REQUIRE(run("rates --ensemble " + e + " --out " + r + " --csv " + rcsv +
              " > /dev/null") == 0);
  auto rm = ldcoh::read_rate_matrix(r);
  CHECK(rm.meta.n == 10);
  CHECK(rm.meta.num_steps == 6);
  CHECK(rm.meta.alpha == 0.5);
  for (int i = 0; i < 10; ++i) CHECK(rm.at(i, i) == 0.0);
  CHECK(slurp(rcsv).find("# kind=one_way n=10") != std::string::npos);

  REQUIRE(run("semidist --kind meet --rates " + r + " --out " + meet +
              " > /dev/null") == 0);
  REQUIRE(run("semidist --kind cross --rates " + r + " --out " + cross +
              " > /dev/null") == 0);
  REQUIRE(run("semidist --kind l2 --ensemble " + e + " --out " + l2 +
              " > /dev/null") == 0);
  auto sm = ldcoh::read_semidistance_matrix(meet);
  CHECK(sm.meta.kind == ldcoh::MatrixKind::meet);
  CHECK_FALSE(sm.meet_via.empty());
  CHECK(ldcoh::axiom_check(sm, &rm).ok);
  auto sx = ldcoh::read_semidistance_matrix(cross);
  CHECK(ldcoh::axiom_check(sx, &rm).ok);
  CHECK(ldcoh::read_semidistance_matrix(l2).meta.kind == ldcoh::MatrixKind::l2);

  REQUIRE(run("cornerstones --matrix " + meet + " --max-q 3 --seed 7 --out " + corner +
              " > /dev/null") == 0);
  json cj = json::parse(slurp(corner));
  CHECK(cj["format_version"] == 1);
  CHECK(cj["cornerstone_labels"].size() == 3);
  CHECK(cj["objectives"].size() == 3);
  CHECK(cj["matrix_kind"] == "meet");
  CHECK(cj["units"] == "raw");
  for (auto& l : cj["cornerstone_labels"]) {
    int64_t v = l.get<int64_t>();
    CHECK(v >= 1);
    CHECK(v <= 10);
  }

  REQUIRE(run("cluster --matrix " + meet + " --cornerstones " + corner +
              " --ensemble " + e + " -q 2 --out " + clus + " > /dev/null") == 0);
  CHECK(file_exists(clus + ".csv"));
  CHECK(file_exists(clus + ".json"));
  CHECK(file_exists(clus + ".config.json"));
  std::string ccsv = slurp(clus + ".csv");
  CHECK(ccsv.find("traj_id,present,x1,cluster_label,aff_") != std::string::npos);
  json aj = json::parse(slurp(clus + ".json"));
  REQUIRE(aj["affiliations"].size() == 2);
  REQUIRE(aj["affiliations"][0].size() == 10);
  for (int j = 0; j < 10; ++j) {
    double sum = aj["affiliations"][0][j].get<double>() +
                 aj["affiliations"][1][j].get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(aj["hard_clusters"].size() == 10);

  // Without -q the stop-rule suggestion (or the full list) is used.
  REQUIRE(run("cluster --matrix " + meet + " --cornerstones " + corner +
              " --ensemble " + e + " --out " + tmp.file("clus_auto") +
              " > /dev/null") == 0);

  REQUIRE(run("export-plot --matrix " + meet + " --ensemble " + e +
              " --from 1 --out " + plot + " > /dev/null") == 0);
  std::string ptext = slurp(plot);
  CHECK(ptext.find("# kind=meet from=1 slice=0 units=raw") != std::string::npos);
  CHECK(last_column(plot).size() == 10);
  CHECK(last_column(plot)[0] == 0.0);  // distance of the reference to itself

  const std::string log = tmp.file("verify.log");
  REQUIRE(run("verify " + e + " " + r + " " + meet + " " + cross + " " + l2 + " > " +
              log) == 0);
  std::string vtext = slurp(log);
  CHECK(vtext.find("verify: all checks passed") != std::string::npos);
  CHECK(vtext.find("OK " + e) != std::string::npos);
  CHECK(vtext.find("OK " + r) != std::string::npos);
}

TEST_CASE("mismatched artifacts are refused") {
  TempDir tmp("cli");
  const std::string e1 = tmp.file("e1.csv"), e2 = tmp.file("e2.csv");
  const std::string r1 = tmp.file("r1.bin");
  const std::string m1 = tmp.file("m1.bin"), l2 = tmp.file("l2.bin");
  const std::string c1 = tmp.file("c1.json"), cl2 = tmp.file("cl2.json");
  REQUIRE(run("generate --flow map_two_mixing --grid 10 -K 4 --out " + e1 +
              " > /dev/null") == 0);
  REQUIRE(run("generate --flow map_two_mixing --grid 10 -K 5 --out " + e2 +
              " > /dev/null") == 0);
  REQUIRE(run("rates --ensemble " + e1 + " --out " + r1 + " > /dev/null") == 0);
  REQUIRE(run("semidist --kind meet --rates " + r1 + " --out " + m1 +
              " > /dev/null") == 0);
  REQUIRE(run("semidist --kind l2 --ensemble " + e1 + " --out " + l2 +
              " > /dev/null") == 0);
  REQUIRE(run("cornerstones --matrix " + m1 + " --max-q 2 --out " + c1 +
              " > /dev/null") == 0);
  REQUIRE(run("cornerstones --matrix " + l2 + " --max-q 2 --out " + cl2 +
              " > /dev/null") == 0);

  // Rates are asymmetric: cornerstones and clustering refuse them.
  CHECK(run("cornerstones --matrix " + r1 + " --out " + tmp.file("no.json") +
            " 2> /dev/null") == 2);

  // Clustering against the wrong ensemble.
  const std::string err = tmp.file("err.txt");
  CHECK(run("cluster --matrix " + m1 + " --cornerstones " + c1 + " --ensemble " + e2 +
            " --out " + tmp.file("no") + " 2> " + err) == 2);
  CHECK(slurp(err).find("different ensemble") != std::string::npos);

  // Cornerstones that came from another matrix.
  CHECK(run("cluster --matrix " + m1 + " --cornerstones " + cl2 + " --ensemble " + e1 +
            " --out " + tmp.file("no2") + " 2> " + err) == 2);
  CHECK(slurp(err).find("different matrix") != std::string::npos);

  // Labels and slices outside the data.
  CHECK(run("export-plot --matrix " + m1 + " --ensemble " + e1 +
            " --from 999 --out " + tmp.file("p.csv") + " 2> /dev/null") == 2);
  CHECK(run("export-plot --matrix " + m1 + " --ensemble " + e1 +
            " --from 1 --slice 99 --out " + tmp.file("p.csv") + " 2> /dev/null") == 2);
  CHECK(run("cornerstones --matrix " + m1 + " --c0 999 --max-q 2 --out " +
            tmp.file("no3.json") + " 2> /dev/null") == 2);
  CHECK(run("semidist --kind cross --out " + tmp.file("no4.bin") +
            " 2> /dev/null") == 2);
  CHECK(run("semidist --kind banana --rates " + r1 + " --out " + tmp.file("no5.bin") +
            " 2> /dev/null") == 2);

  // A corrupted artifact fails verification.
  auto bytes = slurp(m1);
  bytes[bytes.size() - 3] ^= 0x20;
  std::ofstream(tmp.file("bad.bin"), std::ios::binary) << bytes;
  CHECK(run("verify " + tmp.file("bad.bin") + " 2> /dev/null > /dev/null") == 2);
  CHECK(run("verify " + e2 + " " + m1 + " 2> /dev/null > /dev/null") == 2);
}

TEST_CASE("disconnected data surfaces as a compute failure") {
  TempDir tmp("cli");
  const std::string e = tmp.file("islands.csv");
  {
    std::ofstream out(e);
    out << "traj_id,time_index,x1\n";
    out << "1,0,0\n1,1,0\n";
    out << "2,0,0.4\n2,1,0.4\n";
    out << "3,2,1\n";
    out << "4,2,1.4\n";
  }
  {
    std::ofstream meta(tmp.file("islands.meta.json"));
    meta << "{\"format_version\":1,\"dim\":1,\"times\":[0,1,2],\"periods\":[null]}\n";
  }
  const std::string r = tmp.file("ir.bin"), m = tmp.file("im.bin");
  const std::string c = tmp.file("ic.json"), err = tmp.file("ierr.txt");
  REQUIRE(run("rates --ensemble " + e + " --out " + r + " > /dev/null") == 0);
  REQUIRE(run("semidist --kind meet --rates " + r + " --out " + m + " > /dev/null") == 0);
  REQUIRE(run("cornerstones --matrix " + m + " --max-q 2 --c0 1 --out " + c +
              " > /dev/null") == 0);
  CHECK(run("cluster --matrix " + m + " --cornerstones " + c + " --ensemble " + e +
            " -q 2 --out " + tmp.file("ic") + " 2> " + err) == 3);
  CHECK(slurp(err).find("unreachable") != std::string::npos);
}

TEST_CASE("artifacts are byte-identical across worker counts") {
  TempDir a("cli_a"), b("cli_b");
  auto stage = [&](TempDir& dir, const std::string& workers) {
    const std::string e = dir.file("e.csv"), r = dir.file("r.bin");
    const std::string m = dir.file("m.bin"), c = dir.file("c.json");
    const std::string clus = dir.file("clus"), p = dir.file("p.csv");
    REQUIRE(run("generate --flow map_two_mixing --grid 12 -K 6 --out " + e +
                " --workers " + workers + " > /dev/null") == 0);
    REQUIRE(run("rates --ensemble " + e + " --out " + r + " --workers " + workers +
                " > /dev/null") == 0);
    REQUIRE(run("semidist --kind meet --rates " + r + " --out " + m + " --workers " +
                workers + " > /dev/null") == 0);
    REQUIRE(run("cornerstones --matrix " + m + " --max-q 3 --seed 9 --out " + c +
                " > /dev/null") == 0);
    REQUIRE(run("cluster --matrix " + m + " --cornerstones " + c + " --ensemble " + e +
                " -q 2 --out " + clus + " --workers " + workers + " > /dev/null") == 0);
    REQUIRE(run("export-plot --matrix " + m + " --ensemble " + e + " --from 3 --out " +
                p + " > /dev/null") == 0);
  };
  stage(a, "1");
  stage(b, "3");
  for (const char* f : {"e.csv", "e.meta.json", "r.bin", "m.bin", "c.json", "clus.csv",
                        "clus.json", "p.csv"})
    CHECK(slurp(a.file(f)) == slurp(b.file(f)));
}

TEST_CASE("per-tau units rescale reported values") {
  TempDir tmp("cli");
  const std::string e = tmp.file("e.csv"), r = tmp.file("r.bin");
  const std::string x = tmp.file("x.bin");
  REQUIRE(run("generate --flow zero_flow --grid 6 -K 2 --tau 0.25 --out " + e +
              " > /dev/null") == 0);
  REQUIRE(run("rates --ensemble " + e + " --out " + r + " > /dev/null") == 0);
  REQUIRE(run("semidist --kind cross --rates " + r + " --out " + x + " > /dev/null") == 0);

  const std::string raw = tmp.file("raw.csv"), scaled = tmp.file("scaled.csv");
  REQUIRE(run("export-plot --matrix " + x + " --ensemble " + e + " --from 2 --out " +
              raw + " > /dev/null") == 0);
  REQUIRE(run("export-plot --matrix " + x + " --ensemble " + e + " --from 2 " +
              "--units per-tau --out " + scaled + " > /dev/null") == 0);
  auto v_raw = last_column(raw), v_scaled = last_column(scaled);
  REQUIRE(v_raw.size() == 6);
  REQUIRE(v_scaled.size() == 6);
  for (size_t i = 0; i < v_raw.size(); ++i)
    CHECK(v_scaled[i] == doctest::Approx(0.25 * v_raw[i]).epsilon(1e-12));

  const std::string c_raw = tmp.file("craw.json"), c_tau = tmp.file("ctau.json");
  REQUIRE(run("cornerstones --matrix " + x + " --max-q 2 --seed 3 --out " + c_raw +
              " > /dev/null") == 0);
  REQUIRE(run("cornerstones --matrix " + x + " --max-q 2 --seed 3 --units per-tau "
              "--out " + c_tau + " > /dev/null") == 0);
  json jr = json::parse(slurp(c_raw)), jt = json::parse(slurp(c_tau));
  CHECK(jt["unit_scale"].get<double>() == 0.25);
  CHECK(jr["unit_scale"].get<double>() == 1.0);
  CHECK(jt["cornerstone_labels"] == jr["cornerstone_labels"]);
  double vr = jr["objectives"][0].get<double>();
  double vt = jt["objectives"][0].get<double>();
  CHECK(vr > 0.0);
  CHECK(vt == doctest::Approx(0.25 * vr).epsilon(1e-12));
}

}  // TEST_SUITE
