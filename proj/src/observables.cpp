#include "triwalk/observables.hpp"

#include <algorithm>
#include <cmath>

namespace triwalk {

namespace {

// Visits every edge with support exactly once: (slot, partner slot, p, pos).
template <class F>
void for_each_edge(const SimState& s, F&& f) {
  s.field.for_each([&](TriangleId t, int k, Amplitude v) {
    TriangleId w = s.tri.neighbor(t, k);
    Amplitude other{0, 0};
    if (w != kNoTriangle) {
      other = s.field.at(w, k);
      if (std::abs(other) != 0.0 && slot_key(w, k) < slot_key(t, k)) return;  // partner owns it
    }
    double p = std::norm(v) + std::norm(other);
    f(p, s.tri.slot_position(t, k));
  });
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long wells_in_ball(const SimState& s, double radius) {
  long count = 0;
  for (VertexId v : s.tri.well_vertices()) {
    if (norm(s.tri.vertex(v).pos) <= radius) ++count;
  }
  return count;
}

std::pair<double, double> curvature_in_ball(const SimState& s, double radius) {
  long signed_units = 0;
  long abs_units = 0;
  for (VertexId v : s.tri.curved_vertices()) {
    if (!s.tri.vertex_alive(v)) continue;
    if (norm(s.tri.vertex(v).pos) > radius) continue;
    int u = s.tri.deficit_units(v);
    signed_units += u;
    abs_units += std::abs(u);
  }
  return {signed_units * (kPi / 3.0), abs_units * (kPi / 3.0)};
}

ObservableRecord position_stats(const SimState& s, int max_moment) {
  ObservableRecord rec;
  rec.step = s.step_index;
  rec.norm = s.field.total_norm();

  int m = std::max(2, max_moment);
  std::vector<double> raw_x(m + 1, 0.0), raw_y(m + 1, 0.0);
  double total = 0.0;
  for_each_edge(s, [&](double p, Vec2 pos) {
    total += p;
    double px = p, py = p;
    for (int i = 1; i <= m; ++i) {
      px *= pos.x;
      py *= pos.y;
      raw_x[i] += px;
      raw_y[i] += py;
    }
  });
  if (total <= 0.0) return rec;
  for (int i = 1; i <= m; ++i) {
    raw_x[i] /= total;
    raw_y[i] /= total;
  }
  raw_x[0] = raw_y[0] = 1.0;

  rec.mean_x = raw_x[1];
  rec.mean_y = raw_y[1];
  auto central = [&](const std::vector<double>& raw, double mean, int order) {
    double sum = 0.0;
    for (int i = 0; i <= order; ++i)
      sum += binom(order, i) * raw[i] * std::pow(-mean, order - i);
    return sum;
  };
  rec.var_x = central(raw_x, rec.mean_x, 2);
  rec.var_y = central(raw_y, rec.mean_y, 2);
  rec.var_total = rec.var_x + rec.var_y;
  for (int order = 1; order <= max_moment; ++order) {
    rec.moments_x.push_back(central(raw_x, rec.mean_x, order));
    rec.moments_y.push_back(central(raw_y, rec.mean_y, order));
  }
  return rec;
}

std::vector<std::pair<long, double>> eta_series(const std::vector<ObservableRecord>& records,
                                                int window) {
  std::vector<std::pair<long, double>> out;
  if (window < 3 || window % 2 == 0) return out;
  int h = window / 2;
  if (static_cast<int>(records.size()) < window) return out;
  for (std::size_t c = h; c + h < records.size(); ++c) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = c - h; i <= c + h; ++i) {
      if (records[i].step < 1 || records[i].var_total <= 0.0) continue;
      double lx = std::log(static_cast<double>(records[i].step));
      double ly = std::log(records[i].var_total);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    if (n < 2) continue;
    double den = n * sxx - sx * sx;
    if (den <= 0.0) continue;
    out.emplace_back(records[c].step, (n * sxy - sx * sy) / den);
  }
  return out;
}

std::vector<std::vector<double>> heatmap(const SimState& s, double half_extent, int bins) {
  std::vector<std::vector<double>> grid(bins, std::vector<double>(bins, 0.0));
  double cell = 2.0 * half_extent / bins;
  auto clamp_bin = [&](double u) {
    int b = static_cast<int>(std::floor(u / cell));
    return std::clamp(b, 0, bins - 1);
  };
  for_each_edge(s, [&](double p, Vec2 pos) {
    int col = clamp_bin(pos.x + half_extent);
    int row = clamp_bin(half_extent - pos.y);
    grid[row][col] += p;
  });
  return grid;
}

FitResult fit_well_curve(const std::vector<std::pair<long, long>>& series) {
  FitResult fit;
  for (const auto& [t, wells] : series) {
    if (wells > 1) fit.tmax = std::max(fit.tmax, t);
  }

  // Linear least squares of log(wells) against [log t, -t^2, 1].
  double A[3][3] = {};
  double rhs[3] = {};
  int n = 0;
  std::vector<std::array<double, 4>> pts;
  for (const auto& [t, wells] : series) {
    if (t < 1 || wells <= 0) continue;
    double u0 = std::log(static_cast<double>(t));
    double u1 = -static_cast<double>(t) * static_cast<double>(t);
    double y = std::log(static_cast<double>(wells));
    double u[3] = {u0, u1, 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) A[i][j] += u[i] * u[j];
      rhs[i] += u[i] * y;
    }
    pts.push_back({u0, u1, 1.0, y});
    ++n;
  }
  if (n < 5) {
    fit.degenerate = true;
    return fit;
  }

  // Gaussian elimination with partial pivoting.
  double M[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) M[i][j] = A[i][j];
    M[i][3] = rhs[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    if (std::abs(M[piv][col]) < 1e-12) {
      fit.degenerate = true;
      return fit;
    }
    std::swap(M[col], M[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double fac = M[r][col] / M[col][col];
      for (int j = col; j < 4; ++j) M[r][j] -= fac * M[col][j];
    }
  }
  double sol[3];
  for (int i = 0; i < 3; ++i) sol[i] = M[i][3] / M[i][i];
  fit.a = sol[0];
  fit.b = sol[1];
  fit.c = std::exp(sol[2]);

  double ss = 0.0;
  for (const auto& p : pts) {
    double pred = sol[0] * p[0] + sol[1] * p[1] + sol[2];
    ss += (p[3] - pred) * (p[3] - pred);
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace triwalk
