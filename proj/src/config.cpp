#include "triwalk/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace triwalk {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error("config: " + msg); }

Mat2 parse_mat2(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 8) bad(name + " must be 8 reals (re,im pairs, row-major)");
  Mat2 m;
  for (int i = 0; i < 4; ++i) {
    m.m[i] = Amplitude{j[2 * i].get<double>(), j[2 * i + 1].get<double>()};
  }
  return m;
}

}  // namespace

void RunConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) bad("alpha must lie in [0,1]");
  double b = effective_beta();
  if (!(b >= 0.0 && b <= 1.0)) bad("beta must lie in [0,1]");
  if (steps < 1) bad("steps must be >= 1");
  if (eta_window < 3 || eta_window % 2 == 0) bad("eta_window must be odd and >= 3");
  if (heatmap.bins < 1) bad("heatmap.bins must be >= 1");
  if (!(heatmap.half_extent > 0.0)) bad("heatmap.half_extent must be positive");
  if (!(ball_radius > 0.0)) bad("ball_radius must be positive");
  if (max_moments < 2) bad("max_moments must be >= 2");
  coins.validate();
  for (const auto& s : initial_state) {
    if (s.side < 1 || s.side > 3) bad("initial_state side must be 1..3");
    for (char c : s.path)
      if (c < '1' || c > '3') bad("initial_state path must use side digits 1..3");
  }
}

RunConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) {
    const auto& b = j["beta"];
    if (b.is_string()) {
      if (b.get<std::string>() != "3*alpha") bad("beta must be a number or the token \"3*alpha\"");
    } else {
      cfg.beta = b.get<double>();
    }
  }
  if (j.contains("steps")) cfg.steps = j["steps"].get<long>();
  if (j.contains("coins")) {
    const auto& c = j["coins"];
    if (c.contains("W")) cfg.coins.W = parse_mat2(c["W"], "coins.W");
    const char* names[3] = {"U1", "U2", "U3"};
    for (int k = 0; k < 3; ++k)
      if (c.contains(names[k])) cfg.coins.U[k] = parse_mat2(c[names[k]], names[k]);
  }
  if (j.contains("initial_state")) {
    const auto& st = j["initial_state"];
    if (st.is_string()) {
      if (st.get<std::string>() != "origin-default")
        bad("initial_state must be \"origin-default\" or a slot list");
    } else {
      for (const auto& e : st) {
        InitSlot s;
        s.path = e.value("path", std::string{});
        s.side = e.at("side").get<int>();
        s.re = e.value("re", 0.0);
        s.im = e.value("im", 0.0);
        cfg.initial_state.push_back(s);
      }
    }
  }
  if (j.contains("ball_radius")) cfg.ball_radius = j["ball_radius"].get<double>();
  if (j.contains("eta_window")) cfg.eta_window = j["eta_window"].get<int>();
  if (j.contains("heatmap")) {
    const auto& h = j["heatmap"];
    cfg.heatmap.half_extent = h.value("half_extent", cfg.heatmap.half_extent);
    cfg.heatmap.bins = h.value("bins", cfg.heatmap.bins);
    cfg.heatmap.every_n_steps = h.value("every_n_steps", cfg.heatmap.every_n_steps);
  }
  if (j.contains("snapshot_every")) cfg.snapshot_every = j["snapshot_every"].get<long>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("max_moments")) cfg.max_moments = j["max_moments"].get<int>();
  if (j.contains("assert_level")) {
    std::string a = j["assert_level"].get<std::string>();
    if (a == "none") {
      cfg.assert_level = AssertLevel::None;
    } else if (a == "norm") {
      cfg.assert_level = AssertLevel::Norm;
    } else if (a == "full") {
      cfg.assert_level = AssertLevel::Full;
    } else {
      bad("assert_level must be none|norm|full");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

}  // namespace triwalk
