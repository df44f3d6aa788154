#pragma once

#include <string>
#include <utility>
#include <vector>

#include "triwalk/dynamics.hpp"
#include "triwalk/observables.hpp"

namespace triwalk {

struct SweepRow {
  double alpha = 0.0;
  FitResult fit;
};

void write_graph_json(const Triangulation& tri, const std::string& path);
void write_field_csv(const SimState& s, const std::string& path);
void write_timeseries_csv(const std::vector<ObservableRecord>& records,
                          const std::vector<std::pair<long, double>>& eta,
                          const std::string& path);
void write_movelog_csv(const std::vector<MoveRecord>& log, const std::string& path);
void write_heatmap_csv(const std::vector<std::vector<double>>& grid, const std::string& path);
void write_fit_json(const FitResult& fit, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace triwalk
