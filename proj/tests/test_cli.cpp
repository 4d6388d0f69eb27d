#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twophase/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "twophase");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = twophase::run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("twophase_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const std::string kPresets = std::string(TWOPHASE_SOURCE_DIR) + "/presets/";

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"crosscheck", "--probe", "coherent"}).code == 1);
}

TEST_CASE("validate") {
  const fs::path dir = scratch("validate");
  write(dir / "nocase.json", R"({"nbar": 1, "gamma_grid": {"min": 0.1, "max": 1, "points": 3}})");
  Run r = run({"validate", (dir / "nocase.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("case") != std::string::npos);

  r = run({"validate", (dir / "nocase.json").string(), "--probe", "coherent", "--m", "3", "--engine", "numeric",
           "--gamma-max", "100"});
  CHECK(r.code == 1);
  CHECK(r.err.find("warning: gamma_grid.max: gamma_max = 100 exceeds numeric safe cap") != std::string::npos);

  r = run({"validate", kPresets + "figure2.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"objective\": \"S\"") != std::string::npos);

  write(dir / "broken.json", "{ not json");
  CHECK(run({"validate", (dir / "broken.json").string()}).code == 1);
}

TEST_CASE("crosscheck") {
  Run r = run({"crosscheck", "--probe", "coherent", "--m", "2", "--nbar", "1", "--gamma", "0.5", "--phi1", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("D12,-8,") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);

  r = run({"crosscheck", "--probe", "coherent", "--m", "2", "--gamma", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("degenerate,true,true") != std::string::npos);

  r = run({"crosscheck", "--probe", "squeezed_vacuum", "--m", "3", "--nbar", "2", "--gamma", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dim ") != std::string::npos);

  CHECK(run({"crosscheck", "--probe", "coherent", "--m", "3", "--gamma", "100"}).code == 1);
  CHECK(run({"crosscheck", "--probe", "coherent", "--m", "3", "--nbar", "40", "--gamma", "0.5", "--max-dim", "64"})
            .code == 2);
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  const std::string out = (dir / "rows.csv").string();
  Run r = run({"sweep", kPresets + "crosscheck_squeezed_cubic.json", "--output", out, "--workers", "2"});
  CHECK(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("case,probe,m,nbar,gamma,phi1,engine,", 0) == 0);
  CHECK(csv.find(",both,") != std::string::npos);

  r = run({"sweep", kPresets + "crosscheck_squeezed_cubic.json", "--format", "json", "--points", "3", "--engine",
           "analytic"});
  CHECK(r.code == 0);
  CHECK(r.out.front() == '[');

  r = run({"sweep", "--probe", "coherent", "--m", "2", "--nbar", "1,40", "--gamma-min", "0.1", "--gamma-max", "1",
           "--points", "3", "--engine", "numeric", "--max-dim", "64", "--output", (dir / "partial.csv").string()});
  CHECK(r.code == 2);
  CHECK(slurp(dir / "partial.csv").find("truncation_failed") != std::string::npos);

  CHECK(run({"sweep", "--probe", "coherent", "--m", "2", "--nbar", "1", "--gamma-min", "0.1", "--gamma-max", "1",
             "--points", "3", "--output", "/nonexistent-dir/x.csv"})
            .code == 1);
}

TEST_CASE("figure commands") {
  const fs::path dir = scratch("figures");
  Run r = run({"figure2", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  for (const char* c : {"squeezed_vacuum_m3", "coherent_m3", "squeezed_vacuum_m2", "coherent_m2"}) {
    const std::string text = slurp(dir / (std::string("figure2_") + c + ".csv"));
    CHECK(text.find(",S,") != std::string::npos);
  }

  r = run({"figure3", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  const std::string f3 = slurp(dir / "figure3_coherent_m3.csv");
  CHECK(f3.rfind("gamma,C_Q,phi1_C_Q,C_T,phi1_C_T,C_step1,phi1_step1,beta_opt1,C_step2,phi1_step2,beta_opt2,winner",
                 0) == 0);
  CHECK(r.out.find("figure3_squeezed_vacuum_m2.csv threshold_gamma=none") != std::string::npos);

  CHECK(run({"figure2", "--out-dir", (dir / "missing").string()}).code == 1);
}

TEST_CASE("threshold") {
  const Run r = run({"threshold", "--probe", "coherent", "--m", "3", "--points", "21"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("gamma,C_Q,", 0) == 0);
  CHECK(r.err.find("coherent_m3 nbar 1 threshold_gamma=") != std::string::npos);
  CHECK(r.err.find("threshold_gamma=none") == std::string::npos);
  CHECK(run({"threshold", "--probe", "coherent", "--m", "3", "--engine", "exact"}).code == 1);
}
