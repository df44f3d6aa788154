#include "triwalk/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "json.hpp"

namespace triwalk {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.imbue(std::locale::classic());
  return out;
}

}  // namespace

void write_graph_json(const Triangulation& tri, const std::string& path) {
  nlohmann::ordered_json doc;
  doc["origin"] = tri.origin();
  auto& triangles = doc["triangles"] = nlohmann::ordered_json::array();
  for (TriangleId t : tri.live_triangles()) {
    const Triangle& tr = tri.tri(t);
    nlohmann::ordered_json rec;
    rec["id"] = t;
    rec["label"] = tr.label.str();
    auto& nb = rec["neighbors"] = nlohmann::ordered_json::array();
    for (int k = 0; k < 3; ++k) {
      nlohmann::ordered_json e;
      e["side"] = k + 1;
      if (tr.neighbor[k] == kNoTriangle) {
        e["id"] = nullptr;
      } else {
        e["id"] = tr.neighbor[k];
      }
      nb.push_back(e);
    }
    rec["corners"] = {tr.corner[0], tr.corner[1], tr.corner[2]};
    triangles.push_back(rec);
  }
  auto& vertices = doc["vertices"] = nlohmann::ordered_json::array();
  for (VertexId v : tri.live_vertices()) {
    const Vertex& vx = tri.vertex(v);
    nlohmann::ordered_json rec;
    rec["id"] = v;
    rec["x"] = vx.pos.x;
    rec["y"] = vx.pos.y;
    rec["incidence"] = vx.incidence;
    rec["is_well"] = vx.is_well;
    vertices.push_back(rec);
  }
  auto out = open_out(path);
  out << doc.dump(1) << "\n";
}

void write_field_csv(const SimState& s, const std::string& path) {
  Field phys = gauge_to_physical(s.field, s.tri, s.coins);
  std::vector<std::tuple<TriangleId, int, Amplitude>> rows;
  phys.for_each([&](TriangleId t, int k, Amplitude v) { rows.emplace_back(t, k, v); });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  auto out = open_out(path);
  out << "triangle,side,re,im\n";
  out << std::setprecision(15);
  for (const auto& [t, k, v] : rows)
    out << t << ',' << k + 1 << ',' << v.real() << ',' << v.imag() << '\n';
}

void write_timeseries_csv(const std::vector<ObservableRecord>& records,
                          const std::vector<std::pair<long, double>>& eta,
                          const std::string& path) {
  auto out = open_out(path);
  out << "step,norm,wells_in_ball,curvature_signed,curvature_abs,mean_x,mean_y,"
         "var_x,var_y,var_total,eta\n";
  out << std::setprecision(15);
  std::size_t ei = 0;
  for (const auto& r : records) {
    out << r.step << ',' << r.norm << ',' << r.wells_in_ball << ',' << r.curvature_signed << ','
        << r.curvature_abs << ',' << r.mean_x << ',' << r.mean_y << ',' << r.var_x << ','
        << r.var_y << ',' << r.var_total << ',';
    while (ei < eta.size() && eta[ei].first < r.step) ++ei;
    if (ei < eta.size() && eta[ei].first == r.step) out << eta[ei].second;
    out << '\n';
  }
}

void write_movelog_csv(const std::vector<MoveRecord>& log, const std::string& path) {
  auto out = open_out(path);
  out << "step,kind,triangle_ids,probability_at_trigger\n";
  out << std::setprecision(15);
  for (const auto& m : log) {
    out << m.step << ',' << (m.is_split ? "split" : "merge") << ',';
    for (std::size_t i = 0; i < m.ids.size(); ++i) out << (i ? ";" : "") << m.ids[i];
    out << ',' << m.prob << '\n';
  }
}

void write_heatmap_csv(const std::vector<std::vector<double>>& grid, const std::string& path) {
  auto out = open_out(path);
  out << std::setprecision(15);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_fit_json(const FitResult& fit, const std::string& path) {
  nlohmann::ordered_json doc;
  doc["a"] = fit.a;
  doc["b"] = fit.b;
  doc["c"] = fit.c;
  doc["tmax"] = fit.tmax;
  doc["residual"] = fit.residual;
  doc["degenerate"] = fit.degenerate;
  auto out = open_out(path);
  out << doc.dump(1) << "\n";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "alpha,a,b,c,tmax,residual\n";
  out << std::setprecision(15);
  for (const auto& r : rows)
    out << r.alpha << ',' << r.fit.a << ',' << r.fit.b << ',' << r.fit.c << ',' << r.fit.tmax
        << ',' << r.fit.residual << '\n';
}

}  // namespace triwalk
