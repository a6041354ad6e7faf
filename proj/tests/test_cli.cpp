#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fibers/cli.hpp"
#include "fibers/io.hpp"

using namespace fibers;
using nlohmann::json;

namespace {

const std::string kDir = FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fibers_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("matrix formats") {
    const IntMatrix a = io::parse_matrix(R"({"rows": 2, "cols": 2, "entries": [1, 2, 3, 4]})");
    CHECK(a == IntMatrix::from_rows({{1, 2}, {3, 4}}));
    CHECK(io::parse_matrix("2 3\n1 1 0\n0 1 1\n") == IntMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
    CHECK(io::parse_matrix(io::matrix_json(a).dump()) == a);
    for (const char* bad : {"", "{\"rows\": 2}", "2 2\n1 2 3", "2 x\n", R"({"rows":1,"cols":2,"entries":[1]})",
                            R"({"rows":1,"cols":1,"entries":[1.5]})"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(io::parse_matrix(bad), Error);
    }
    CHECK(io::read_matrix(kDir + "/ex112.json") == IntMatrix::from_rows({{1, 1, 2}}));
  }

  TEST_CASE("vectors and move files") {
    CHECK(io::parse_vector("1, -2 3") == IntVec{1, -2, 3});
    CHECK_THROWS_AS(io::parse_vector("1,a"), Error);
    const IntMatrix a = IntMatrix::from_rows({{1, 1, 2}});
    const MoveSet m = io::parse_moves_csv("# header\n1,-1,0\n\n0,2,-1 # trailing\n", a);
    CHECK(m.size() == 2);
    CHECK(io::parse_moves_csv(io::moves_csv(m), a).signed_vectors() == m.signed_vectors());
    try {
      io::parse_moves_csv("1,-1,0\n1,1\n", a);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_moves_csv("1,1,0\n", a), Error);
  }

  TEST_CASE("graph output") {
    const Fiber f = enumerate_fiber(IntMatrix::from_rows({{1, 1, 2}}), {3});
    const FiberGraph g = build_graph(f, io::read_moves_csv(kDir + "/ex112_lex.csv", f.matrix()));
    const std::string dot = io::dot(g);
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '-') >= 6);
    const std::string csv = io::edge_list_csv(g.graph);
    CHECK(csv.rfind("u,v\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  }

  TEST_CASE("spectral JSON writes infinities as strings") {
    SpectralReport r;
    r.slem = 1.0;
    r.alt_time = r.mixing_time = r.relaxation_time = std::numeric_limits<double>::infinity();
    const json j = io::spectral_json(r);
    CHECK(j["mixing_time"] == "inf");
    CHECK(j["definition_used"] == "inverse-log-slem");
  }
}

TEST_SUITE("cli") {
  TEST_CASE("fiber") {
    const Run r = run({"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "3"});
    CHECK(r.code == cli::ok);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
    const Run j = run({"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--json"});
    CHECK(json::parse(j.out)["size"] == 6);
    CHECK(run({"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "-1"}).code == cli::empty);
    CHECK(run({"fiber", "--ak", "2"}).code == cli::ok);
    const Run big = run({"fiber", "--ak", "2", "--rhs", "0,0,0,0,1", "--json"});
    CHECK(json::parse(big.out)["size"] == 8);
  }

  TEST_CASE("input errors exit with 1") {
    const auto bad = scratch("bad.json");
    io::write_file(bad.string(), "{\"rows\": 1, \"cols\": 3, \"entries\": [1, 2]}");
    const Run r = run({"fiber", "--matrix", bad.string(), "--rhs", "3"});
    CHECK(r.code == cli::error);
    CHECK_FALSE(r.err.empty());
    CHECK(run({"fiber", "--matrix", "/nonexistent.json", "--rhs", "1"}).code == cli::error);
    CHECK(run({"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "1,2"}).code == cli::error);
    CHECK(run({"fiber", "--matrix", kDir + "/ex112.json"}).code == cli::error);
    CHECK(run({"bogus"}).code == cli::error);
    CHECK(run({}).code == cli::error);
    CHECK(run({"connectivity", "--ak", "2", "--moves", "nonsense"}).code == cli::error);
    CHECK(run({"connectivity", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--moves", "graver-ak"}).code ==
          cli::error);
  }

  TEST_CASE("connectivity") {
    const Run r = run({"connectivity", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--moves",
                       "custom:" + kDir + "/ex112_graver.csv", "--json"});
    REQUIRE(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["vertices"] == 6);
    CHECK(j["edges"] == 10);
    CHECK(j["edge_connectivity"] == 2);
    CHECK(j["vertex_connectivity"] == 2);
    const Run lex = run({"connectivity", "--ak", "2", "--moves", "groebner-lex-ak", "--json"});
    const json jl = json::parse(lex.out);
    CHECK(jl["min_degree"] == 2);
    CHECK(jl["edge_connectivity"] == 1);
    CHECK(jl["vertex_connectivity"] == 1);
    const json jo = json::parse(run({"connectivity", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--moves",
                                     "graver-oracle", "--json"})
                                    .out);
    CHECK(jo["edges"] == 10);
  }

  TEST_CASE("DOT and edge-list files") {
    const auto dot = scratch("g.dot"), edges = scratch("g.csv");
    const Run r = run({"connectivity", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--moves",
                       "custom:" + kDir + "/ex112_lex.csv", "--dot", dot.string(), "--edges", edges.string()});
    REQUIRE(r.code == cli::ok);
    const std::string d = io::read_file(dot.string());
    std::size_t lines = 0;
    for (std::size_t pos = d.find("--"); pos != std::string::npos; pos = d.find("--", pos + 2)) ++lines;
    CHECK(lines == 6);
    const std::string e = io::read_file(edges.string());
    CHECK(std::count(e.begin(), e.end(), '\n') == 7);
  }

  TEST_CASE("verify suites") {
    CHECK(run({"verify", "conj1", "--k", "1..3"}).code == cli::ok);
    const json c = json::parse(run({"verify", "conj1", "--k", "2", "--json"}).out);
    CHECK(c["passed"] == true);
    CHECK(c["checks"][0]["counterexample"] == true);
    CHECK(run({"verify", "graver-theorem", "--k", "1..2", "--samples", "3"}).code == cli::ok);
    const json g = json::parse(run({"verify", "graver-basis", "--k", "1..2", "--json"}).out);
    CHECK(g["checks"][1]["explicit"] == 40);
    CHECK(g["checks"][1]["oracle"] == 40);
    const json u = json::parse(run({"verify", "universality", "--k", "2", "--bound", "100", "--json"}).out);
    CHECK(u["checks"][0]["Bk_rows"] == 14);
    CHECK(u["checks"][0]["Bk_cols"] == 21);
    CHECK(u["checks"][0]["min_rhs"] >= 100);
    CHECK(run({"verify", "nothing"}).code == cli::error);
    CHECK(run({"verify", "conj1", "--k", "3..1"}).code == cli::error);
  }

  TEST_CASE("chain") {
    const Run r = run({"chain", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--moves",
                       "custom:" + kDir + "/ex112_lex.csv", "--eps", "0.25,0.1", "--json"});
    REQUIRE(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["slem"].get<double>() == doctest::Approx(0.8413318906526354));
    CHECK(j["tv_mixing"]["0.25"] == 7);
    CHECK(j["definition_used"] == "inverse-log-slem");
    const Run csv = run({"chain", "experiment", "fig4", "--kmax", "3"});
    CHECK(csv.code == cli::ok);
    CHECK(csv.out.rfind("k,vertices,", 0) == 0);
    CHECK(run({"chain", "experiment", "fig6"}).code == cli::error);
  }

  TEST_CASE("ak helpers and moves") {
    const Run d = run({"ak", "decompose", "--k", "2", "--rhs", "1,0,2,-1,3", "--json"});
    REQUIRE(d.code == cli::ok);
    const json j = json::parse(d.out);
    CHECK(j["lower"] == 0);
    CHECK(j["upper"] == 2);
    CHECK(j["fiber_size"] == 144);
    CHECK(j["min_degree_formula"] == 7);
    const Run boxes = run({"ak", "boxes", "--k", "1"});
    CHECK(std::count(boxes.out.begin(), boxes.out.end(), '\n') == 5);
    const Run m = run({"moves", "--ak", "1", "--moves", "graver-ak"});
    CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 6);
  }

  TEST_CASE("reruns are byte-identical and --out writes the same bytes") {
    const std::vector<std::string> args{"connectivity", "--ak", "2", "--moves", "graver-ak", "--json"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> sweep{"chain", "experiment", "fig4", "--kmax", "4", "--jobs", "2"};
    CHECK(run(sweep).out == run(sweep).out);
    const auto path = scratch("fiber.csv");
    std::vector<std::string> to_file{"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "3", "--out", path.string()};
    REQUIRE(run(to_file).code == cli::ok);
    CHECK(io::read_file(path.string()) == run({"fiber", "--matrix", kDir + "/ex112.json", "--rhs", "3"}).out);
  }
}
