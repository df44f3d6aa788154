#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "triwalk/field.hpp"
#include "triwalk/dynamics.hpp"

namespace triwalk {

// One explicit initial-state slot: a side path walked from the origin, then
// a side and an amplitude (1-based sides).
struct InitSlot {
  std::string path;
  int side = 1;
  double re = 0.0;
  double im = 0.0;
};

struct HeatmapConfig {
  double half_extent = 20.0;
  int bins = 80;
  long every_n_steps = 0;  // 0: only at the final step
};

struct RunConfig {
  double alpha = 1e-3;
  std::optional<double> beta;  // absent: beta = 3*alpha
  long steps = 200;
  CoinSet coins;
  std::vector<InitSlot> initial_state;  // empty: origin default
  double ball_radius = 1.0;
  int eta_window = 5;
  HeatmapConfig heatmap;
  long snapshot_every = 0;  // 0: no graph/field snapshots
  std::string out_dir = "out";
  int max_moments = 4;
  AssertLevel assert_level = AssertLevel::Norm;

  // Internal probabilities never exceed 1, so the default 3*alpha pairing is
  // clamped into the admissible range.
  double effective_beta() const { return beta ? *beta : std::min(3.0 * alpha, 1.0); }
  void validate() const;  // throws on out-of-range values
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);

}  // namespace triwalk
