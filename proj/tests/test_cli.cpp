#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nfold/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = nfold::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "nfold-cli-tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p.string();
}

const char* kA121 =
    R"({"format_version": "1", "kind": "matrix-graver", "payload": {"matrix": [[1, 2, 1]]}})";

}  // namespace

TEST_CASE("graver subcommand reproduces the known [1 2 1] basis") {
  auto path = write_temp("a121.json", kA121);
  auto r = run_cli({"graver", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"ambient_dim\": 3, \"elements\": [[-2, 1, 0], [-1, 0, 1], [-1, 1, -1], "
        "[0, -1, 2], [0, 1, -2], [1, -1, 1], [1, 0, -1], [2, -1, 0]]}\n");
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  auto path = write_temp("a121.json", kA121);
  auto r1 = run_cli({"graver", "--input", path, "--threads", "1"});
  auto r2 = run_cli({"graver", "--input", path, "--threads", "4"});
  auto r3 = run_cli({"graver", "--input", path, "--threads", "4"});
  CHECK(r1.out == r2.out);
  CHECK(r2.out == r3.out);
}

TEST_CASE("solve reports statuses with matching exit codes") {
  SUBCASE("optimal with --check") {
    auto path = write_temp("solve_ok.json", R"({
      "format_version": "1", "kind": "nfold-solve",
      "payload": {"problem": "linear",
        "bimatrix": {"a1": [[1, 2, 1]], "a2": []}, "n": 1,
        "lower": [0, 0, 0], "upper": [4, 4, 4], "rhs": [4],
        "weights": [1, 1, 1]}})");
    auto r = run_cli({"solve", "--input", path, "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"status\": \"optimal\"") != std::string::npos);
    CHECK(r.out.find("\"check\": \"ok\"") != std::string::npos);
  }
  SUBCASE("infeasible exits 2") {
    auto path = write_temp("solve_inf.json", R"({
      "format_version": "1", "kind": "nfold-solve",
      "payload": {"problem": "linear",
        "bimatrix": {"a1": [[2]], "a2": []}, "n": 1,
        "lower": [0], "upper": [9], "rhs": [3],
        "weights": [1]}})");
    auto r = run_cli({"solve", "--input", path});
    CHECK(r.code == 2);
    CHECK(r.out.find("infeasible") != std::string::npos);
  }
  SUBCASE("recession witness exits 3") {
    auto path = write_temp("solve_ray.json", R"({
      "format_version": "1", "kind": "nfold-solve",
      "payload": {"problem": "linear",
        "bimatrix": {"a1": [[1, -1]], "a2": []}, "n": 1,
        "lower": [0, 0], "upper": ["inf", "inf"], "rhs": [0],
        "weights": [-1, -1]}})");
    auto r = run_cli({"solve", "--input", path});
    CHECK(r.code == 3);
    CHECK(r.out.find("infinite-if-nonempty") != std::string::npos);
    CHECK(r.out.find("\"witness\"") != std::string::npos);
  }
  SUBCASE("text format") {
    auto path = write_temp("solve_txt.json", R"({
      "format_version": "1", "kind": "nfold-solve",
      "payload": {"problem": "linear",
        "bimatrix": {"a1": [[1, 1]], "a2": []}, "n": 1,
        "lower": [0, 0], "upper": [4, 4], "rhs": [4],
        "weights": [1, 2]}})");
    auto r = run_cli({"solve", "--input", path, "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("status: optimal\n") != std::string::npos);
    CHECK(r.out.find("value: 4\n") != std::string::npos);
  }
}

TEST_CASE("validation failures exit 4 and name the field") {
  SUBCASE("malformed JSON") {
    auto path = write_temp("broken.json", "{this is not json");
    auto r = run_cli({"graver", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("malformed JSON") != std::string::npos);
  }
  SUBCASE("wrong kind for the subcommand") {
    auto path = write_temp("wrong_kind.json", kA121);
    auto r = run_cli({"solve", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("$.kind") != std::string::npos);
  }
  SUBCASE("unknown fields are rejected") {
    auto path = write_temp("unknown_field.json",
                           R"({"format_version": "1", "kind": "matrix-graver",
                               "payload": {"matrix": [[1]], "extra": 1}})");
    auto r = run_cli({"graver", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("payload.extra") != std::string::npos);
  }
  SUBCASE("margin block shape errors are named") {
    auto path = write_temp("bad_margins.json", R"({
      "format_version": "1", "kind": "table",
      "payload": {"dims": [2, 2], "layers": 2,
        "margins": [ [[1,1],[1,1]], [[1,1],[1,1]], [[1,1],[1]] ]}})");
    auto r = run_cli({"table", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("margins[2]") != std::string::npos);
  }
  SUBCASE("negative capacity") {
    auto path = write_temp("bad_capacity.json", R"({
      "format_version": "1", "kind": "transshipment",
      "payload": {"vertices": 2, "edges": [[0, 1]], "commodities": 1,
        "demands": [[1, -1]], "capacities": [-1],
        "edge_costs": [{"type": "linear", "slope": 1}],
        "commodity_costs": [[{"type": "linear", "slope": 1}]]}})");
    auto r = run_cli({"flow", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("negative capacity") != std::string::npos);
  }
  SUBCASE("doubles are rejected as inexact") {
    auto path = write_temp("float_entry.json",
                           R"({"format_version": "1", "kind": "matrix-graver",
                               "payload": {"matrix": [[1.5]]}})");
    auto r = run_cli({"graver", "--input", path});
    CHECK(r.code == 4);
    CHECK(r.err.find("exact integer") != std::string::npos);
  }
}

TEST_CASE("table subcommand") {
  SUBCASE("feasible fiber") {
    auto path = write_temp("table_ok.json", R"({
      "format_version": "1", "kind": "table",
      "payload": {"dims": [2, 2], "layers": 2,
        "margins": [ [[2,2],[2,2]], [[2,2],[2,2]], [[2,2],[2,2]] ]}})");
    auto r = run_cli({"table", "--input", path, "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"check\": \"ok\"") != std::string::npos);
  }
  SUBCASE("infeasible fiber exits 2") {
    auto path = write_temp("table_bad.json", R"({
      "format_version": "1", "kind": "table",
      "payload": {"dims": [2, 2], "layers": 2,
        "margins": [ [[2,2],[2,2]], [[2,2],[2,2]], [[3,2],[2,2]] ]}})");
    auto r = run_cli({"table", "--input", path});
    CHECK(r.code == 2);
  }
}

TEST_CASE("entry-set subcommand equals the library result") {
  auto path = write_temp("entry.json", R"({
    "format_version": "1", "kind": "entry-set",
    "payload": {"dims": [2, 2], "layers": 2,
      "margins": [ [[1,1],[1,1]], [[1,1],[1,1]], [[1,1],[1,1]] ],
      "entry": [0, 0, 0]}})");
  auto r = run_cli({"entry-set", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"values\": [\"0\", \"1\"]") != std::string::npos);
  CHECK(r.out.find("\"unique\": false") != std::string::npos);
}

TEST_CASE("output lands in the requested file") {
  auto path = write_temp("a121_out.json", kA121);
  fs::path dir = fs::temp_directory_path() / "nfold-cli-tests";
  std::string out_path = (dir / "basis_out.json").string();
  auto r = run_cli({"graver", "--input", path, "--output", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out_path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str().find("\"ambient_dim\": 3") != std::string::npos);
}

TEST_CASE("complexity subcommand on a bimatrix") {
  auto path = write_temp("cx.json", R"({
    "format_version": "1", "kind": "complexity",
    "payload": {"bimatrix": {"a1": [], "a2": [[1, -1]]}}})");
  auto r = run_cli({"complexity", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"status\": \"ok\", \"bound\": \"1\"}\n");
}

TEST_CASE("distance solve reports the exact power and an approximate root") {
  auto path = write_temp("solve_dist.json", R"({
    "format_version": "1", "kind": "nfold-solve",
    "payload": {"problem": "distance",
      "bimatrix": {"a1": [[1, 1, 1]], "a2": []}, "n": 1,
      "lower": [0, 0, 0], "upper": [4, 4, 4], "rhs": [4],
      "p": 2, "goal": [4, 4, 4]}})");
  auto r = run_cli({"solve", "--input", path, "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"distance_approx\"") != std::string::npos);
  CHECK(r.out.find("\"check\": \"ok\"") != std::string::npos);
}

TEST_CASE("max solve with a two-row weight matrix") {
  auto path = write_temp("solve_max.json", R"({
    "format_version": "1", "kind": "nfold-solve",
    "payload": {"problem": "max",
      "bimatrix": {"a1": [[1, 1, 1]], "a2": []}, "n": 1,
      "lower": [0, 0, 0], "upper": [3, 3, 3], "rhs": [4],
      "weight_matrix": [[1, 0, 0], [0, 1, -1]],
      "composite": [{"type": "power", "alpha": 1, "beta": 2, "center": 0},
                    {"type": "power", "alpha": 1, "beta": 2, "center": 0}]}})");
  auto r = run_cli({"solve", "--input", path, "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"value\": \"10\"") != std::string::npos);
}

TEST_CASE("generalized solve through the CLI") {
  // single commodity min-cost flow as a weighted program
  auto path = write_temp("solve_gen.json", R"({
    "format_version": "1", "kind": "nfold-solve",
    "payload": {"problem": "generalized",
      "bimatrix": {"a1": [], "a2": [[1, -1], [-1, 1]]},
      "weight_bimatrix": {"a1": [[1, 0], [0, 1]], "a2": []},
      "n": 1,
      "lower": [0, 0], "upper": [9, 9],
      "wlower": [0, 0], "wupper": [2, 2],
      "rhs": [1, -1],
      "f": [{"type": "linear", "slope": 1}, {"type": "linear", "slope": 1}],
      "g": [{"type": "power", "alpha": 1, "beta": 2, "center": 0},
            {"type": "linear", "slope": 0}]}})");
  auto r = run_cli({"solve", "--input", path, "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"status\": \"optimal\"") != std::string::npos);
}

TEST_CASE("timings are opt-in so default reports stay deterministic") {
  auto path = write_temp("a121_t.json", kA121);
  auto plain = run_cli({"graver", "--input", path});
  CHECK(plain.out.find("wall_time_ms") == std::string::npos);
  auto timed = run_cli({"complexity", "--input",
                        write_temp("cx_t.json", R"({
    "format_version": "1", "kind": "complexity",
    "payload": {"bimatrix": {"a1": [], "a2": [[1, -1]]}}})"),
                        "--timings"});
  CHECK(timed.out.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("help and missing arguments") {
  std::ostringstream out, err;
  CHECK(nfold::cli::run({"--help"}, out, err) == 0);
  CHECK(out.str().find("graver") != std::string::npos);
  auto r = run_cli({"graver"});
  CHECK(r.code == 4);  // --input is required
}
