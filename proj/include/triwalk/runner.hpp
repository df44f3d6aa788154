#pragma once

#include <utility>
#include <vector>

#include "triwalk/config.hpp"
#include "triwalk/io.hpp"
#include "triwalk/observables.hpp"

namespace triwalk {

struct RunResult {
  std::vector<ObservableRecord> records;  // one per step, starting at step 0
  std::vector<std::pair<long, double>> eta;
  FitResult fit;
};

// Executes a configured run; writes the output files when write_outputs is
// set (out_dir is created if needed).
RunResult run_simulation(const RunConfig& cfg, bool write_outputs);

// CLI entry points: exit code 0 on success, 1 on error (diagnostic on
// stderr).
int run_cli(const RunConfig& cfg);
int sweep_cli(const std::vector<double>& alphas, RunConfig base);

}  // namespace triwalk
