#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "triwalk/config.hpp"
#include "triwalk/io.hpp"
#include "triwalk/runner.hpp"

using namespace triwalk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

struct TempDir {
  fs::path path;
  TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing: defaults, overrides, beta token") {
  RunConfig d = parse_config_json("{}");
  CHECK(d.alpha == 1e-3);
  CHECK_FALSE(d.beta.has_value());
  CHECK(d.effective_beta() == doctest::Approx(3e-3));
  CHECK(d.steps == 200);
  CHECK_NOTHROW(d.validate());

  RunConfig c = parse_config_json(R"({
    "alpha": 0.02, "beta": "3*alpha", "steps": 50,
    "eta_window": 7, "ball_radius": 2.5,
    "heatmap": {"half_extent": 10.0, "bins": 16, "every_n_steps": 25},
    "coins": {"W": [0,0, 1,0, 1,0, 0,0], "U2": [0,1, 0,0, 0,0, 0,1]},
    "initial_state": [{"path": "12", "side": 3, "re": 1.0}],
    "assert_level": "full", "max_moments": 3, "out_dir": "x"
  })");
  CHECK(c.alpha == 0.02);
  CHECK(c.effective_beta() == doctest::Approx(0.06));
  CHECK(c.eta_window == 7);
  CHECK(c.heatmap.bins == 16);
  CHECK(c.coins.W.m[1] == Amplitude{1, 0});
  CHECK(c.coins.U[1].m[0] == Amplitude{0, 1});
  REQUIRE(c.initial_state.size() == 1);
  CHECK(c.initial_state[0].path == "12");
  CHECK(c.initial_state[0].side == 3);
  CHECK(c.assert_level == AssertLevel::Full);
  CHECK_NOTHROW(c.validate());

  // the default 3*alpha pairing clamps at 1
  RunConfig big = parse_config_json(R"({"alpha": 0.9})");
  CHECK(big.effective_beta() == 1.0);
  CHECK_NOTHROW(big.validate());
}

TEST_CASE("config validation rejects bad values") {
  CHECK_THROWS(parse_config_json("not json"));
  CHECK_THROWS(parse_config_json(R"({"beta": "2*alpha"})"));
  CHECK_THROWS(parse_config_json(R"({"assert_level": "loud"})"));

  auto bad = [](const char* text) {
    RunConfig c = parse_config_json(text);
    CHECK_THROWS(c.validate());
  };
  bad(R"({"alpha": 1.5})");
  bad(R"({"alpha": -0.1})");
  bad(R"({"beta": 2.0})");
  bad(R"({"steps": 0})");
  bad(R"({"eta_window": 4})");
  bad(R"({"coins": {"W": [2,0, 0,0, 0,0, 1,0]}})");
  bad(R"({"initial_state": [{"path": "4", "side": 1, "re": 1.0}]})");
  bad(R"({"initial_state": [{"side": 0, "re": 1.0}]})");
}

TEST_CASE("run writes the full output set with the documented headers") {
  TempDir tmp("triwalk_run_test");
  RunConfig cfg;
  cfg.alpha = 0.05;
  cfg.steps = 12;
  cfg.snapshot_every = 6;
  cfg.heatmap.every_n_steps = 6;
  cfg.heatmap.bins = 8;
  cfg.heatmap.half_extent = 5.0;
  cfg.out_dir = (tmp.path / "out").string();
  cfg.assert_level = AssertLevel::Full;

  RunResult res = run_simulation(cfg, true);
  CHECK(res.records.size() == 13);
  CHECK(res.records.back().norm == doctest::Approx(1.0));

  fs::path out(cfg.out_dir);
  std::string ts = slurp(out / "timeseries.csv");
  CHECK(first_line(ts) ==
        "step,norm,wells_in_ball,curvature_signed,curvature_abs,mean_x,mean_y,"
        "var_x,var_y,var_total,eta");
  // one header + 13 records
  CHECK(std::count(ts.begin(), ts.end(), '\n') == 14);
  // eta column empty before the first full window
  std::istringstream lines(ts);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);  // step 0
  CHECK(line.back() == ',');

  std::string mv = slurp(out / "movelog.csv");
  CHECK(first_line(mv) == "step,kind,triangle_ids,probability_at_trigger");
  CHECK(mv.find("split") != std::string::npos);

  auto fit = nlohmann::json::parse(slurp(out / "fit.json"));
  CHECK(fit.contains("a"));
  CHECK(fit.contains("b"));
  CHECK(fit.contains("c"));
  CHECK(fit.contains("tmax"));
  CHECK(fit.contains("residual"));

  std::string hm = slurp(out / "heatmap_12.csv");
  CHECK(std::count(hm.begin(), hm.end(), '\n') == 8);
  CHECK(fs::exists(out / "heatmap_6.csv"));

  auto graph = nlohmann::json::parse(slurp(out / "graph_6.json"));
  CHECK(graph.contains("origin"));
  REQUIRE(graph["triangles"].is_array());
  const auto& t0 = graph["triangles"][0];
  CHECK(t0["neighbors"][0]["side"] == 1);  // sides are 1-based on disk
  std::string fl = slurp(out / "field_6.csv");
  CHECK(first_line(fl) == "triangle,side,re,im");
}

TEST_CASE("explicit initial state is placed by side paths and normalized") {
  TempDir tmp("triwalk_init_test");
  RunConfig cfg;
  cfg.alpha = 1.0;
  cfg.beta = 0.0;
  cfg.steps = 1;
  cfg.out_dir = (tmp.path / "out").string();
  cfg.initial_state = {InitSlot{"", 1, 2.0, 0.0}, InitSlot{"2", 2, 0.0, 2.0}};

  RunResult res = run_simulation(cfg, false);
  CHECK(res.records[0].norm == doctest::Approx(1.0));
  // two slots with equal weight across a shared edge path
  CHECK(res.records[1].norm == doctest::Approx(1.0));
}

TEST_CASE("sweep writes per-alpha runs and the summary table") {
  TempDir tmp("triwalk_sweep_test");
  RunConfig base;
  base.steps = 10;
  base.out_dir = (tmp.path / "sweep").string();
  int rc = sweep_cli({0.05, 0.2}, base);
  CHECK(rc == 0);

  fs::path out(base.out_dir);
  std::string sw = slurp(out / "sweep.csv");
  CHECK(first_line(sw) == "alpha,a,b,c,tmax,residual");
  CHECK(std::count(sw.begin(), sw.end(), '\n') == 3);
  CHECK(fs::exists(out / "alpha_0.05" / "timeseries.csv"));
  CHECK(fs::exists(out / "alpha_0.2" / "timeseries.csv"));

  CHECK(sweep_cli({1.5}, base) == 1);
}
