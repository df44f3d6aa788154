#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "triwalk/config.hpp"
#include "triwalk/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<long> steps;
  std::optional<double> alpha;
  std::optional<double> beta;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_dir, "output directory (overrides config)");
  cmd->add_option("--steps", o.steps, "number of steps (overrides config)");
  cmd->add_option("--alpha", o.alpha, "1-to-3 threshold (overrides config)");
  cmd->add_option("--beta", o.beta, "3-to-1 threshold (overrides config)");
}

triwalk::RunConfig build_config(const CommonOpts& o) {
  triwalk::RunConfig cfg;
  if (!o.config_path.empty()) cfg = triwalk::load_config(o.config_path);
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.steps) cfg.steps = *o.steps;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.beta) cfg.beta = *o.beta;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walk on a dynamical triangulated surface"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "execute one simulation");
  add_common(run_cmd, run_opts);

  CommonOpts sweep_opts;
  std::vector<double> alphas;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep over alpha (beta = 3*alpha)");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--alphas", alphas, "alpha values")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return triwalk::run_cli(build_config(run_opts));
    return triwalk::sweep_cli(alphas, build_config(sweep_opts));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
