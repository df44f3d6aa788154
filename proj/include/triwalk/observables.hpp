#pragma once

#include <utility>
#include <vector>

#include "triwalk/dynamics.hpp"

namespace triwalk {

struct ObservableRecord {
  long step = 0;
  double norm = 0.0;
  long wells_in_ball = 0;
  double curvature_signed = 0.0;  // radians
  double curvature_abs = 0.0;     // radians
  double mean_x = 0.0, mean_y = 0.0;
  double var_x = 0.0, var_y = 0.0, var_total = 0.0;
  std::vector<double> moments_x;  // central moments, orders 1..max
  std::vector<double> moments_y;
};

struct FitResult {
  double a = 0.0, b = 0.0, c = 0.0;  // model t^a * exp(-b t^2) * c
  long tmax = 0;                     // last step with wells above the oscillation band
  double residual = 0.0;
  bool degenerate = false;
};

long wells_in_ball(const SimState& s, double radius);

// (signed, absolute) deficit-angle sums over non-flat vertices in the ball.
std::pair<double, double> curvature_in_ball(const SimState& s, double radius);

// Position mean/variance/central moments of the per-edge probability
// distribution; each edge counted once.
ObservableRecord position_stats(const SimState& s, int max_moment);

// Sliding-window log-log slope of var_total against step.
std::vector<std::pair<long, double>> eta_series(const std::vector<ObservableRecord>& records,
                                                int window);

// bins x bins probability histogram over [-half_extent, half_extent]^2;
// out-of-range mass is clamped to the border bins. Row 0 is the top
// (largest y).
std::vector<std::vector<double>> heatmap(const SimState& s, double half_extent, int bins);

FitResult fit_well_curve(const std::vector<std::pair<long, long>>& series);

}  // namespace triwalk
