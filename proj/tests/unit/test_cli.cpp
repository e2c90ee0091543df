#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsonc/cli.hpp"
#include "dsonc/document.hpp"
#include "testing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  json out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dsonc::cli::run(args, out, err);
  return {code, json::parse(out.str()), err.str()};
}

std::string data(const std::string& name) { return (fs::path(DSONC_DATA_DIR) / name).string(); }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("dsonc_cli_" + std::to_string(std::rand()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = path / name;
    if (!text.empty()) std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
};

void check_envelope(const json& j) {
  REQUIRE(j.is_object());
  CHECK(j.contains("verdict"));
  CHECK(j["witnesses"].is_array());
  CHECK(j["diagnostics"].is_object());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check on the Motzkin family") {
    auto r = run({"check", "--cone", "dsonc", data("motzkin_3_1.json")});
    check_envelope(r.out);
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "NotMember");
    CHECK(r.out["diagnostics"]["method"] == "closed-form");

    r = run({"check", "--cone", "sonc", data("motzkin_3_1.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Boundary");

    r = run({"check", "--cone", "dsonc", data("motzkin_3_27.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Boundary");
    REQUIRE(r.out["witnesses"].size() == 1);
    CHECK(r.out["witnesses"][0]["tau"][0].get<double>() == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-7));
  }

  TEST_CASE("check on multi-negative supports") {
    auto r = run({"check", "--cone", "dual-sonc", data("dual_sonc_divergence.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Member");
    r = run({"check", "--cone", "dsonc", data("dual_sonc_divergence.json")});
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "NotMember");
    r = run({"check", "--cone", "dsonc", "--split", "file", data("disjoint_circuits.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Member");
    CHECK(r.out["witnesses"].size() == 2);
    r = run({"check", "--cone", "dsonc", "--split", "file", "--split-file", data("disjoint_split.json"), data("disjoint_circuits.json")});
    CHECK(r.code == 0);
    r = run({"check", "--cone", "sonc", data("segment_split.json")});
    CHECK(r.out["diagnostics"]["method"] == "split-frank-wolfe");
  }

  TEST_CASE("check in poly mode reduces odd exponents") {
    TempDir tmp;
    const auto f = tmp.file("odd.json", R"({"n": 1, "mode": "poly", "terms": [{"c": 1, "e": ["0"]}, {"c": 0.5, "e": ["1"]}, {"c": 1, "e": ["2"]}]})");
    const auto r = run({"check", "--cone", "dsonc", f});
    CHECK(r.code == 0);
    CHECK(r.out["diagnostics"]["poly_reduction"] == true);
  }

  TEST_CASE("vertex sign violations are NotMember") {
    TempDir tmp;
    const auto f = tmp.file("bad.json", R"({"n": 1, "terms": [{"c": 1, "e": ["1"]}, {"c": -1, "e": ["2"]}]})");
    const auto r = run({"check", "--cone", "sonc", f});
    CHECK(r.code == 1);
    CHECK(r.out["diagnostics"].contains("vertex_sign_violation"));
  }

  TEST_CASE("bound") {
    auto r = run({"bound", "--split", "uniform", data("bound_triangle.json"), "--boost"});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Certified");
    CHECK(r.out["diagnostics"]["gamma_dsonc"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r.out["diagnostics"]["gamma_sonc_boosted"].get<double>() == doctest::Approx(3.0).epsilon(1e-7));

    TempDir tmp;
    const auto f = tmp.file("e2x.json", R"({"n": 1, "terms": [{"c": 1, "e": ["2"]}]})");
    r = run({"bound", "--split", "uniform", f});
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "UnboundedDirection");
  }

  TEST_CASE("structural subcommands") {
    auto r = run({"equilibrium", data("motzkin_3_27.json")});
    CHECK(r.code == 0);
    CHECK(r.out["witnesses"][0]["point"][0].get<double>() == doctest::Approx(0.5493061443).epsilon(1e-9));
    CHECK(r.out["witnesses"][0]["level"].get<double>() == doctest::Approx(3.0));
    CHECK(r.out["diagnostics"]["dsonc_boundary"] == true);

    r = run({"minimizer", data("motzkin_3_1.json")});
    CHECK(r.code == 0);
    CHECK(std::abs(r.out["witnesses"][0]["value"].get<double>()) < 1e-12);

    r = run({"circuits", data("motzkin_3_1.json")});
    CHECK(r.out["diagnostics"]["count"] == 1);

    r = run({"extreme-ray", data("univariate_boundary.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "Extreme");
    r = run({"extreme-ray", data("univariate_interior.json")});
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "NotExtreme");

    r = run({"mms", data("mms_motzkin_triangle.json")});
    CHECK(r.code == 0);
    CHECK(r.out["witnesses"][0]["mediated"].size() == 6);
    CHECK(r.out["diagnostics"]["excluded"].size() == 4);

    r = run({"sos-check", data("motzkin_poly_3_27.json")});
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "NotSOS");
    r = run({"sos-check", data("sdsos_example.json")});
    CHECK(r.code == 0);
    CHECK(r.out["verdict"] == "SOS");
  }

  TEST_CASE("generate") {
    TempDir tmp;
    const auto out = tmp.file("gen.json");
    auto r = run({"generate", "--circuit", data("motzkin_circuit.json"), "--w", "0.54930614433405489,0.54930614433405489", "--t", "3", "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out["diagnostics"]["dsonc"] == "Boundary");
    const auto f = dsonc::load_document(out).to_signomial();
    CHECK(f.coefficient_of(dsonc::testing::P({0, 0})) == doctest::Approx(27.0).epsilon(1e-9));
    r = run({"generate", "--circuit", data("motzkin_circuit.json"), "--w", "0,zero", "--t", "1"});
    CHECK(r.code == 2);
    CHECK(r.out["diagnostics"]["code"] == "InvalidArgument");
  }

  TEST_CASE("plot writes an LF CSV with 17 significant digits") {
    TempDir tmp;
    const auto out = tmp.file("f.csv");
    auto r = run({"plot", data("univariate_boundary.json"), "--grid", "-2:2:101", "--out", out});
    CHECK(r.code == 0);
    std::ifstream in(out, std::ios::binary);
    const std::string csv((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.rfind("x,f\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
    CHECK(csv.find("\n-2,") != std::string::npos);
    // Row for x = 0: f = 1 − 1 + 1 = 1.
    CHECK(csv.find("\n0,1\n") != std::string::npos);

    const auto out2 = tmp.file("g.csv");
    r = run({"plot", data("motzkin_3_1.json"), "--grid", "-1:1:3,-1:1:5", "--out", out2});
    CHECK(r.code == 0);
    CHECK(r.out["diagnostics"]["rows"] == 15);
    std::ifstream in2(out2, std::ios::binary);
    std::string header;
    std::getline(in2, header);
    CHECK(header == "x,y,f");

    r = run({"plot", data("motzkin_3_1.json"), "--grid", "-1:1:3", "--out", out2});
    CHECK(r.code == 2);
    CHECK(r.out["diagnostics"]["code"] == "DimensionMismatch");
  }

  TEST_CASE("errors: usage, parse positions and missing files") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.out["verdict"] == "Error");
    CHECK(r.out["diagnostics"]["code"] == "UsageError");

    r = run({"check", "--cone", "psd", data("motzkin_3_1.json")});
    CHECK(r.code == 2);

    TempDir tmp;
    const auto f = tmp.file("broken.json", "{\n  \"n\": 1,\n  \"terms\": [\n    {\"c\": 1, \"e\": [\"x\"]}\n  ]\n}\n");
    r = run({"check", "--cone", "dsonc", f});
    CHECK(r.code == 2);
    CHECK(r.out["diagnostics"]["code"] == "ParseError");
    CHECK(r.out["diagnostics"]["line"] == 4);
    CHECK(r.out["diagnostics"]["column"] == 20);
    CHECK_FALSE(r.err.empty());

    r = run({"equilibrium", data("dual_sonc_divergence.json")});
    CHECK(r.code == 2);
    CHECK(r.out["diagnostics"]["code"] == "NotACircuit");
  }

  TEST_CASE("batch mode") {
    const auto r = run({"check", "--cone", "dsonc", "--jobs", "3", data("motzkin_3_1.json"), data("motzkin_3_27.json"),
                        data("motzkin_1_1.json"), data("bound_triangle.json")});
    CHECK(r.code == 1);
    CHECK(r.out["verdict"] == "NotMember");
    REQUIRE(r.out["results"].size() == 4);
    CHECK(r.out["results"][0]["verdict"] == "NotMember");
    CHECK(r.out["results"][1]["verdict"] == "Boundary");
    CHECK(r.out["results"][2]["verdict"] == "Boundary");
    CHECK(r.out["results"][3]["exit_code"] == 0);
    CHECK(r.out["diagnostics"]["jobs"] == 3);
  }
}
