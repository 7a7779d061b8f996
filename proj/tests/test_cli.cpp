#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>

#include "covlab/experiment.hpp"
#include "covlab/serialize.hpp"
#include "covlab/witness.hpp"

using namespace covlab;

namespace {

std::atomic<int> temp_counter{0};

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("covlab_test_" + std::to_string(++temp_counter) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::string p = (path / name).string();
    write_file(p, content);
    return p;
  }
};

ExperimentConfig cfg(const std::string& command,
                     std::initializer_list<std::pair<std::string, std::string>> kv) {
  ExperimentConfig c;
  c.command = command;
  for (const auto& [k, v] : kv) c.kv[k] = v;
  return c;
}

}  // namespace

TEST_CASE("config canonical text and hash are order-independent") {
  ExperimentConfig a = cfg("eq", {{"profile", "3,3"}, {"mode", "exact"}});
  ExperimentConfig b;
  b.command = "eq";
  b.kv["mode"] = "exact";
  b.kv["profile"] = "3,3";
  CHECK(a.canonical_text() == b.canonical_text());
  CHECK(a.hash() == b.hash());

  ExperimentConfig parsed = ExperimentConfig::from_text(a.canonical_text());
  CHECK(parsed.command == "eq");
  CHECK(parsed.kv == a.kv);
  CHECK(parsed.canonical_text() == a.canonical_text());
}

TEST_CASE("eq run: exact record with exact 3 on (3,3)") {
  ResultRecord rec = run_experiment(cfg("eq", {{"profile", "3,3"}, {"mode", "exact"}}));
  CHECK(rec.status == RunStatus::Exhaustive);
  CHECK(rec.exit_code() == 0);
  CHECK(rec.payload_json.find("\"exact\": 3") != std::string::npos);
}

TEST_CASE("eq run: malformed profile refuses with exit 2") {
  ResultRecord rec = run_experiment(cfg("eq", {{"profile", "3,x"}}));
  CHECK(rec.status == RunStatus::Refused);
  CHECK(rec.exit_code() == 2);
}

TEST_CASE("records round-trip through JSON and replay deterministically") {
  ExperimentConfig c = cfg("eq", {{"profile", "2,2"}, {"mode", "exact"}});
  ResultRecord rec = run_experiment(c);
  std::string json = rec.to_json();
  ResultRecord back = ResultRecord::from_json(json);
  CHECK(back.config.canonical_text() == c.canonical_text());
  CHECK(back.status == rec.status);
  CHECK(back.payload_json == rec.payload_json);

  // identical config => byte-identical payload
  ResultRecord again = run_experiment(c);
  CHECK(again.payload_json == rec.payload_json);
}

TEST_CASE("witness instantiate + verify pipeline with a persisted certificate") {
  TempDir tmp;
  std::string cert_path = (tmp.path / "cert.json").string();
  ResultRecord rec = run_experiment(
      cfg("witness", {{"action", "instantiate"}, {"kind", "lattice"}, {"m", "3"}, {"n", "3"},
                      {"out", cert_path}}));
  CHECK(rec.status == RunStatus::Exhaustive);
  REQUIRE(std::filesystem::exists(cert_path));

  ResultRecord ver = run_experiment(cfg("verify", {{"cert", cert_path}}));
  CHECK(ver.status == RunStatus::Exhaustive);
  CHECK(ver.payload_json.find("\"matches_stored\": true") != std::string::npos);
}

TEST_CASE("relabel run over files") {
  TempDir tmp;
  std::string tree = tmp.file("tree.txt",
                              "depth 2\n. : 10,20,30\n10 : 11,21\n20 : 12,22\n30 : 13,23\n");
  std::string family = tmp.file("family.csv", "0,0\n0,1\n1,0\n1,1\n");
  ResultRecord rec = run_experiment(cfg("relabel", {{"tree", tree}, {"family", family}}));
  CHECK(rec.status == RunStatus::Exhaustive);
  CHECK(rec.payload_json.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("homeo run verifies containment and lift") {
  ResultRecord rec = run_experiment(
      cfg("homeo", {{"window", "3"}, {"depth", "2"}, {"branch", "1,-2"}, {"p0", "1/2"}}));
  CHECK(rec.status == RunStatus::Exhaustive);
  CHECK(rec.payload_json.find("\"failed\": 0") != std::string::npos);
}

TEST_CASE("compress and rearrange runs over model/pieces files") {
  TempDir tmp;
  std::string model = tmp.file("model.txt", "kind = product\nsizes = 2,2,2,2\ngrade = 2\n");
  std::string pieces = tmp.file("pieces.txt", "0,0,0,0\n1,1,1,1\n");
  ResultRecord comp = run_experiment(cfg("compress", {{"model", model}, {"pieces", pieces}}));
  CHECK(comp.status == RunStatus::Exhaustive);

  std::string rpieces = tmp.file("rpieces.txt", "0,0,1,1\n0,0,1,0\n");
  ResultRecord re = run_experiment(
      cfg("rearrange", {{"model", model}, {"pieces", rpieces}, {"u", "0,0"}}));
  CHECK(re.status == RunStatus::Exhaustive);
}

TEST_CASE("banach run requires a seed and reports sampled") {
  ResultRecord no_seed = run_experiment(cfg(
      "witness", {{"action", "instantiate"}, {"kind", "banach"}, {"dims", "1,1"},
                  {"deltas", "1/2,1/4"}}));
  CHECK(no_seed.status == RunStatus::Refused);

  ResultRecord rec = run_experiment(cfg(
      "witness", {{"action", "instantiate"}, {"kind", "banach"}, {"dims", "1,1"},
                  {"deltas", "1/2,1/4"}, {"seed", "7"}, {"samples", "500"}}));
  CHECK(rec.status == RunStatus::Sampled);
  CHECK(rec.payload_json.find("\"failures\": 0") != std::string::npos);
}

TEST_CASE("report tables from records; refutation witness column populated") {
  TempDir tmp;
  ResultRecord ok = run_experiment(cfg("eq", {{"profile", "3,3"}, {"mode", "exact"}}));
  ResultRecord torus = run_experiment(
      cfg("witness", {{"action", "instantiate"}, {"kind", "torus"}, {"bits", "4"},
                      {"blocks", "2,2"}}));
  std::string p1 = tmp.file("r1.json", ok.to_json());
  std::string p2 = tmp.file("r2.json", torus.to_json());

  ReportTables tables = build_report({ok, torus});
  CHECK(tables.eq_csv.find("[3,3]") != std::string::npos);
  CHECK(tables.certificates_csv.find("dyadic torus") != std::string::npos);
  CHECK(tables.warnings.empty());

  ResultRecord rep = run_experiment(cfg("report", {{"records", p1 + ";" + p2}}));
  CHECK(rep.status == RunStatus::Exhaustive);

  // empty list -> headers only
  ReportTables empty = build_report({});
  CHECK(empty.eq_csv.find("profile,") == 0);

  // mixed versions flagged
  ResultRecord other = ok;
  other.tool_version = "9.9.9";
  ReportTables mixed = build_report({ok, other});
  CHECK_FALSE(mixed.warnings.empty());
}

TEST_CASE("a truncated certificate refutes on replay with exit 1") {
  TempDir tmp;
  std::string cert_path = (tmp.path / "cert.json").string();
  ResultRecord rec = run_experiment(
      cfg("witness", {{"action", "instantiate"}, {"kind", "lattice"}, {"m", "2"}, {"n", "2"},
                      {"out", cert_path}}));
  REQUIRE(rec.status == RunStatus::Exhaustive);

  CoveringCertificate cert = certificate_from_json(read_file(cert_path));
  cert.translators.pop_back();
  write_file(cert_path, certificate_to_json(cert));

  ResultRecord ver = run_experiment(cfg("verify", {{"cert", cert_path}}));
  CHECK(ver.status == RunStatus::Refuted);
  CHECK(ver.exit_code() == 1);
}
