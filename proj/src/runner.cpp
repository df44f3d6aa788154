#include "triwalk/runner.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace triwalk {

namespace {

namespace fs = std::filesystem;

void apply_initial_state(SimState& s, const RunConfig& cfg) {
  if (cfg.initial_state.empty()) return;
  Field f;
  for (const auto& slot : cfg.initial_state) {
    TriangleId t = s.tri.origin();
    for (char c : slot.path) {
      s.tri.ensure_materialized(t);
      t = s.tri.neighbor(t, c - '1');
    }
    s.tri.ensure_materialized(t);
    f.set(t, slot.side - 1, Amplitude{slot.re, slot.im});
  }
  double n = f.total_norm();
  if (n <= 0.0) throw std::runtime_error("runner: initial state has zero norm");
  // Keep the norm-1 invariant regardless of the configured amplitudes.
  double scale = 1.0 / std::sqrt(n);
  Field scaled;
  f.for_each([&](TriangleId t, int k, Amplitude v) { scaled.set(t, k, scale * v); });
  s.field = std::move(scaled);
  double r = 0.0;
  s.field.for_each([&](TriangleId t, int k, Amplitude) {
    r = std::max(r, norm(s.tri.slot_position(t, k)));
  });
  s.tri.expand_dirty(r + 1.0);
}

ObservableRecord observe(const SimState& s, const RunConfig& cfg) {
  ObservableRecord rec = position_stats(s, cfg.max_moments);
  rec.step = s.step_index;
  rec.wells_in_ball = wells_in_ball(s, cfg.ball_radius);
  auto [cs, ca] = curvature_in_ball(s, cfg.ball_radius);
  rec.curvature_signed = cs;
  rec.curvature_abs = ca;
  return rec;
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, bool write_outputs) {
  cfg.validate();
  SimState s(2.0, cfg.coins, Thresholds{cfg.alpha, cfg.effective_beta()});
  s.assert_level = cfg.assert_level;
  apply_initial_state(s, cfg);

  if (write_outputs) fs::create_directories(cfg.out_dir);
  auto path_in_out = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };

  RunResult result;
  result.records.push_back(observe(s, cfg));
  for (long t = 1; t <= cfg.steps; ++t) {
    step(s);
    result.records.push_back(observe(s, cfg));
    if (write_outputs) {
      bool heat_due = cfg.heatmap.every_n_steps > 0 && t % cfg.heatmap.every_n_steps == 0;
      if (heat_due || t == cfg.steps) {
        std::ostringstream name;
        name << "heatmap_" << t << ".csv";
        write_heatmap_csv(heatmap(s, cfg.heatmap.half_extent, cfg.heatmap.bins),
                          path_in_out(name.str()));
      }
      if (cfg.snapshot_every > 0 && t % cfg.snapshot_every == 0) {
        std::ostringstream gname, fname;
        gname << "graph_" << t << ".json";
        fname << "field_" << t << ".csv";
        write_graph_json(s.tri, path_in_out(gname.str()));
        write_field_csv(s, path_in_out(fname.str()));
      }
    }
  }

  result.eta = eta_series(result.records, cfg.eta_window);
  std::vector<std::pair<long, long>> wells;
  for (const auto& r : result.records) wells.emplace_back(r.step, r.wells_in_ball);
  result.fit = fit_well_curve(wells);

  if (write_outputs) {
    write_timeseries_csv(result.records, result.eta, path_in_out("timeseries.csv"));
    write_movelog_csv(s.move_log, path_in_out("movelog.csv"));
    write_fit_json(result.fit, path_in_out("fit.json"));
  }
  return result;
}

int run_cli(const RunConfig& cfg) {
  try {
    run_simulation(cfg, true);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int sweep_cli(const std::vector<double>& alphas, RunConfig base) {
  try {
    for (double a : alphas) {
      if (!(a > 0.0 && a <= 1.0)) throw std::runtime_error("sweep: alphas must lie in (0,1]");
    }
    fs::create_directories(base.out_dir);
    std::vector<SweepRow> rows;
    for (double a : alphas) {
      RunConfig cfg = base;
      cfg.alpha = a;
      cfg.beta.reset();  // sweep always pairs beta = 3*alpha
      std::ostringstream sub;
      sub << "alpha_" << a;
      cfg.out_dir = (fs::path(base.out_dir) / sub.str()).string();
      RunResult res = run_simulation(cfg, true);
      rows.push_back(SweepRow{a, res.fit});
    }
    write_sweep_csv(rows, (fs::path(base.out_dir) / "sweep.csv").string());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace triwalk
