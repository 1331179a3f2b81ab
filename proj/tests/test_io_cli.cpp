// Tests for the file format (canonical JSON + text import) and the
// command-line interface (spawned as a subprocess; the binary path arrives
// in TURAN_CLI).
//
// Oracles: byte-identical serialize/read round trips, nlohmann re-parsing
// of everything the CLI prints as JSON, and the documented exit codes.

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "turan/combinat.hpp"
#include "turan/constructor.hpp"
#include "turan/errors.hpp"
#include "turan/hypergraph.hpp"
#include "turan/io.hpp"

using namespace turan;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/turan_io_test_") + name;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given arguments; returns the exit code and leaves
// stdout+stderr in `output`.
int run_cli(const std::string& args, std::string& output) {
  const char* bin = std::getenv("TURAN_CLI");
  REQUIRE(bin != nullptr);
  std::string out_path = temp_path("cli_out.txt");
  std::string cmd = std::string(bin) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  output = read_text(out_path);
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

SystemFile sample_file() {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  Builder b(cfg);
  auto sys = b.construct(9, 4);  // complete graph, 126 edges
  return make_system_file(*sys, cfg, "2026-08-19T00:00:00Z");
}

}  // namespace

TEST_CASE("fraction rendering round-trips and normalizes") {
  CHECK(rat_to_fraction(Rat(3, 4)) == "3/4");
  CHECK(rat_to_fraction(Rat(6, 8)) == "3/4");
  CHECK(rat_to_fraction(Rat(5)) == "5");
  CHECK(rat_to_fraction(Rat(-7, 2)) == "-7/2");
  CHECK(rat_from_fraction("3/4") == Rat(3, 4));
  CHECK(rat_from_fraction("5") == Rat(5));
  CHECK(rat_from_fraction("-7/2") == Rat(-7, 2));
  Rat big = Rat(Int("123456789012345678901234567890"), Int("987654321098765432109876543210"));
  CHECK(rat_from_fraction(rat_to_fraction(big)) == big);
  CHECK_THROWS_AS((void)rat_from_fraction("abc"), std::invalid_argument);
  CHECK_THROWS_AS((void)rat_from_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS((void)rat_from_fraction(""), std::invalid_argument);
}

TEST_CASE("canonical serialization is a byte-for-byte fixed point") {
  SystemFile f = sample_file();
  std::string first = serialize_system_file(f);
  std::string path = temp_path("roundtrip.json");
  write_system_file(f, path);
  SystemFile back = read_system_file(path);
  CHECK(back.n == f.n);
  CHECK(back.r == f.r);
  CHECK(back.s == f.s);
  CHECK(back.size == f.size);
  CHECK(back.lemma == f.lemma);
  CHECK(back.mode == f.mode);
  CHECK(back.beta == f.beta);
  CHECK(back.ledger_bound == f.ledger_bound);
  CHECK(back.construction_timestamp == f.construction_timestamp);
  CHECK(back.edges == f.edges);
  CHECK(serialize_system_file(back) == first);
}

TEST_CASE("graph reconstruction matches the source system") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  Builder b(cfg);
  auto sys = b.construct(11, 6);
  SystemFile f = make_system_file(*sys, cfg, now_utc_iso8601());
  RGraph g = graph_from_file(f);
  CHECK(g == sys->graph());
}

TEST_CASE("snapshotting a recursive-form system is rejected") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  BuildOptions small;
  small.materialize_bits = 512;
  Builder b(cfg, small);
  auto lazy = b.construct(12, 6);
  REQUIRE_FALSE(lazy->materialized());
  CHECK_THROWS_AS((void)make_system_file(*lazy, cfg, "t"), std::logic_error);
}

TEST_CASE("text import normalizes edge order to colex") {
  std::string path = temp_path("import.txt");
  write_text(path,
             "5 3 4 3\n"
             "1 4 5\n"
             "2 3 4\n"
             "1 2 3\n");
  SystemFile f = read_system_file(path);
  CHECK(f.n == 5);
  CHECK(f.r == 3);
  CHECK(f.s == 4);
  CHECK(f.size == 3);
  CHECK(f.mode == "import");
  REQUIRE(f.edges.size() == 3);
  CHECK(f.edges[0] == Subset{1, 2, 3});
  CHECK(f.edges[1] == Subset{2, 3, 4});
  CHECK(f.edges[2] == Subset{1, 4, 5});
  // Import accepts blank lines and is serializable as canonical JSON.
  RGraph g = graph_from_file(f);
  CHECK(g.size() == 3);
}

TEST_CASE("malformed text imports are rejected") {
  std::string path = temp_path("bad.txt");
  SUBCASE("short header") {
    write_text(path, "5 3 4\n1 2 3\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("size mismatch") {
    write_text(path, "5 3 4 2\n1 2 3\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("edge with wrong uniformity") {
    write_text(path, "5 3 4 1\n1 2\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("vertex out of range") {
    write_text(path, "5 3 4 1\n1 2 9\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("duplicate edge") {
    write_text(path, "5 3 4 2\n1 2 3\n1 2 3\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("trailing tokens") {
    write_text(path, "5 3 4 1 7\n1 2 3\n");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS((void)read_system_file(temp_path("does_not_exist")), SystemFileError);
  }
}

TEST_CASE("malformed JSON files are rejected") {
  std::string path = temp_path("bad.json");
  SUBCASE("not JSON at all") {
    write_text(path, "{ definitely not json");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("missing required field") {
    write_text(path, R"({"format_version":1,"n":5,"r":3})");
    CHECK_THROWS_AS((void)read_system_file(path), SystemFileError);
  }
  SUBCASE("unsupported version") {
    SystemFile f = sample_file();
    f.format_version = 2;
    write_system_file(f, path);
    CHECK_THROWS_AS((void)read_system_file_json(path), SystemFileError);
  }
  SUBCASE("size disagrees with the edge list") {
    SystemFile f = sample_file();
    f.size += 1;
    write_system_file(f, path);
    CHECK_THROWS_AS((void)read_system_file_json(path), SystemFileError);
  }
  SUBCASE("edge out of colex order") {
    SystemFile f = sample_file();
    std::swap(f.edges.front(), f.edges.back());
    write_system_file(f, path);
    CHECK_THROWS_AS((void)read_system_file_json(path), SystemFileError);
  }
  SUBCASE("decreasing vertices inside an edge") {
    SystemFile f = sample_file();
    std::swap(f.edges.front().front(), f.edges.front().back());
    write_system_file(f, path);
    CHECK_THROWS_AS((void)read_system_file_json(path), SystemFileError);
  }
}

// ---------------------------------------------------------------------------
// CLI subprocess tests
// ---------------------------------------------------------------------------

TEST_CASE("cli: construct then verify round-trips with exit code 0") {
  std::string sys_path = temp_path("cli_sys.json");
  std::string out;
  int code = run_cli("construct --n 12 --r 6 --out " + sys_path, out);
  CHECK(code == 0);
  CHECK(out.find("met: yes") != std::string::npos);
  CHECK(out.find("written") != std::string::npos);

  code = run_cli("verify --in " + sys_path, out);
  CHECK(code == 0);
  CHECK(out.find("covered") != std::string::npos);

  // JSON mode parses cleanly and repeats the verdict.
  code = run_cli("verify --in " + sys_path + " --json", out);
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j.at("status").get<std::string>() == "covered");
}

TEST_CASE("cli: a covering hole is exit code 2 with a counterexample") {
  // A valid 3-edge system on [5] minus one edge leaves holes.
  std::string path = temp_path("cli_broken.txt");
  write_text(path,
             "5 3 4 2\n"
             "1 2 3\n"
             "2 3 4\n");
  std::string out;
  int code = run_cli("verify --in " + path, out);
  CHECK(code == 2);
  CHECK(out.find("counterexample") != std::string::npos);
}

TEST_CASE("cli: malformed input files are exit code 3") {
  std::string path = temp_path("cli_bad.json");
  write_text(path, "{ nope");
  std::string out;
  CHECK(run_cli("verify --in " + path, out) == 3);
  CHECK(run_cli("nonsense-subcommand", out) == 3);
  CHECK(run_cli("construct --n 12", out) == 3);  // missing required --r
}

TEST_CASE("cli: infeasible construction parameters are exit code 1") {
  std::string out;
  int code = run_cli(
      "construct --n 10 --r 6 --beta 0.9 --c 0.1 --mu 2 --out " + temp_path("x.json"), out);
  CHECK(code == 1);
  CHECK(out.find("infeasible") != std::string::npos);
}

TEST_CASE("cli: constants subcommand reports the solved optimum") {
  std::string out;
  int code = run_cli("constants --R 1 --json", out);
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j.at("mu").get<double>() > 4.9105);
  CHECK(j.at("mu").get<double>() < 4.9110);
  CHECK(j.at("feasible_general").get<bool>());
}

TEST_CASE("cli: exact subcommand solves and prints the witness") {
  std::string out;
  int code = run_cli("exact --n 5 --s 4 --r 3 --json", out);
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j.at("optimum").get<int>() == 3);
  CHECK(j.at("proof_of_optimality").get<bool>());
  CHECK(j.at("witness").size() == 3);
}

TEST_CASE("cli: sampled verification option") {
  std::string sys_path = temp_path("cli_sys14.json");
  std::string out;
  CHECK(run_cli("construct --n 14 --r 7 --mode random --seed 5 --out " + sys_path, out) == 0);
  int code = run_cli("verify --in " + sys_path + " --mode sample --samples 5000 --json", out);
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j.at("status").get<std::string>() == "sampled_ok");
  CHECK(j.at("samples").get<int>() == 5000);
}

TEST_CASE("cli: table subcommand emits one row per cell") {
  std::string out;
  int code = run_cli("table --r-min 6 --r-max 6 --n-min 8 --n-max 12", out);
  CHECK(code == 0);
  // Header plus five rows.
  int lines = 0;
  for (char ch : out) lines += (ch == '\n');
  CHECK(lines == 6);
  CHECK(out.find("ledger_bound") != std::string::npos);
}
