#include "triwalk/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace triwalk {

namespace {

constexpr double kRoot3Half = 0.86602540378443864676;

[[noreturn]] void fault(const std::string& msg) { throw std::runtime_error("triangulation: " + msg); }

Vec2 lattice_pos(int a, int b) {
  // Unit-edge lattice, shifted so the origin cell's centroid is (0,0).
  return {a + 0.5 * b - 0.5, (b - 1.0 / 3.0) * kRoot3Half};
}

struct Cell {
  int i, j;
  bool down;
};

Cell cell_neighbor(const Cell& c, int side) {
  if (!c.down) {
    switch (side) {
      case 0: return {c.i, c.j, true};
      case 1: return {c.i - 1, c.j, true};
      default: return {c.i, c.j - 1, true};
    }
  }
  switch (side) {
    case 0: return {c.i, c.j, false};
    case 1: return {c.i + 1, c.j, false};
    default: return {c.i, c.j + 1, false};
  }
}

void cell_corner_coords(const Cell& c, std::array<std::pair<int, int>, 3>& out) {
  if (!c.down) {
    out = {{{c.i, c.j}, {c.i + 1, c.j}, {c.i, c.j + 1}}};
  } else {
    out = {{{c.i + 1, c.j + 1}, {c.i, c.j + 1}, {c.i + 1, c.j}}};
  }
}

}  // namespace

std::uint64_t Triangulation::cell_key(int i, int j, bool down) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 33) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 1) |
         (down ? 1u : 0u);
}

std::uint64_t Triangulation::lattice_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

VertexId Triangulation::get_or_create_lattice_vertex(int a, int b) {
  auto key = lattice_key(a, b);
  if (const VertexId* found = lattice_verts_.find(key)) return *found;
  VertexId id = static_cast<VertexId>(verts_.size());
  Vertex v;
  v.pos = lattice_pos(a, b);
  v.incidence = 6;  // conceptually on the infinite flat lattice
  v.alive = true;
  verts_.push_back(v);
  lattice_verts_.put(key, id);
  return id;
}

void Triangulation::set_incidence(VertexId v, int n) {
  verts_[v].incidence = n;
  if (n == 6) {
    curved_vertices_.erase(v);
  } else {
    curved_vertices_.insert(v);
  }
}

TriangleId Triangulation::get_or_create_cell(int i, int j, bool down) {
  auto key = cell_key(i, j, down);
  if (const TriangleId* found = cell_index_.find(key)) return *found;

  TriangleId id = static_cast<TriangleId>(tris_.size());
  tris_.emplace_back();
  Triangle& t = tris_.back();
  t.alive = true;
  t.flat_cell = true;
  t.cell_i = i;
  t.cell_j = j;
  t.cell_down = down;
  t.label = down ? all_down() : all_up();

  std::array<std::pair<int, int>, 3> cc;
  cell_corner_coords({i, j, down}, cc);
  for (int k = 0; k < 3; ++k) t.corner[k] = get_or_create_lattice_vertex(cc[k].first, cc[k].second);

  cell_index_.put(key, id);
  for (int k = 0; k < 3; ++k) {
    Cell nb = cell_neighbor({i, j, down}, k);
    if (const TriangleId* nfound = cell_index_.find(cell_key(nb.i, nb.j, nb.down))) {
      TriangleId o = *nfound;
      if (!tris_[o].alive) fault("cell index points at dead triangle");
      tris_[id].neighbor[k] = o;
      tris_[o].neighbor[k] = id;
    }
  }
  return id;
}

Triangulation::Triangulation(double initial_radius) {
  if (!(initial_radius > 0.0)) fault("initial_radius must be positive");
  origin_ = get_or_create_cell(0, 0, false);
  int range = static_cast<int>(initial_radius) + 3;
  for (int j = -range; j <= range; ++j) {
    for (int i = -range; i <= range; ++i) {
      for (int d = 0; d < 2; ++d) {
        Cell c{i, j, d == 1};
        std::array<std::pair<int, int>, 3> cc;
        cell_corner_coords(c, cc);
        Vec2 cen{0, 0};
        for (auto& p : cc) cen = cen + (1.0 / 3.0) * lattice_pos(p.first, p.second);
        if (norm(cen) <= initial_radius) get_or_create_cell(c.i, c.j, c.down);
      }
    }
  }
  ensure_materialized(origin_);
  dirty_radius_ = 1.0;
}

void Triangulation::ensure_materialized(TriangleId t) {
  if (!tri_alive(t)) fault("ensure_materialized on dead triangle");
  for (int k = 0; k < 3; ++k) {
    if (tris_[t].neighbor[k] != kNoTriangle) continue;
    if (!tris_[t].flat_cell) fault("dynamic triangle with missing neighbor");
    Cell nb = cell_neighbor({tris_[t].cell_i, tris_[t].cell_j, tris_[t].cell_down}, k);
    get_or_create_cell(nb.i, nb.j, nb.down);
  }
}

std::array<TriangleId, 3> Triangulation::split_1to3(TriangleId t) {
  if (!tri_alive(t)) fault("split of dead triangle");
  ensure_materialized(t);
  Triangle parent = tris_[t];

  // New center vertex at the parent's centroid.
  VertexId center = static_cast<VertexId>(verts_.size());
  {
    Vertex v;
    v.pos = centroid(t);
    v.alive = true;
    v.is_well = true;
    verts_.push_back(v);
  }
  set_incidence(center, 3);
  well_vertices_.insert(center);
  for (int k = 0; k < 3; ++k) set_incidence(parent.corner[k], verts_[parent.corner[k]].incidence + 1);

  std::array<TriangleId, 3> kid{};
  for (int j = 0; j < 3; ++j) {
    kid[j] = static_cast<TriangleId>(tris_.size());
    tris_.emplace_back();
    tris_.back().alive = true;
  }
  const auto& ps = parent.label.s;
  tris_[kid[0]].label = parent.label;
  tris_[kid[1]].label = TriLabel{{ps[0], ps[1], flip(ps[2])}};
  tris_[kid[2]].label = TriLabel{{flip(ps[0]), flip(ps[1]), ps[2]}};

  const VertexId p0 = parent.corner[0], p1 = parent.corner[1], p2 = parent.corner[2];
  tris_[kid[0]].corner = {center, p2, p1};
  tris_[kid[1]].corner = {p2, center, p0};
  tris_[kid[2]].corner = {p1, p0, center};

  for (int j = 0; j < 3; ++j) {
    TriangleId ext = parent.neighbor[j];
    tris_[kid[j]].neighbor[j] = ext;
    tris_[ext].neighbor[j] = kid[j];
  }
  // Internal gluings: (kid1,kid2) on side 0, (kid2,kid0) on side 1,
  // (kid0,kid1) on side 2.
  tris_[kid[1]].neighbor[0] = kid[2];
  tris_[kid[2]].neighbor[0] = kid[1];
  tris_[kid[2]].neighbor[1] = kid[0];
  tris_[kid[0]].neighbor[1] = kid[2];
  tris_[kid[0]].neighbor[2] = kid[1];
  tris_[kid[1]].neighbor[2] = kid[0];

  tris_[t].alive = false;
  if (parent.flat_cell) cell_index_.erase(cell_key(parent.cell_i, parent.cell_j, parent.cell_down));
  dynamic_tris_.erase(t);
  for (int j = 0; j < 3; ++j) dynamic_tris_.insert(kid[j]);
  if (origin_ == t) origin_ = kid[0];

  Vec2 c = verts_[center].pos;
  expand_dirty(norm(c) + 1.0);
  return kid;
}

bool Triangulation::is_canonical_3cycle(const std::array<TriangleId, 3>& c) const {
  TriangleId u = c[0], v = c[1], w = c[2];
  if (!tri_alive(u) || !tri_alive(v) || !tri_alive(w)) return false;
  if (u == v || v == w || u == w) return false;
  return tris_[u].neighbor[0] == v && tris_[v].neighbor[0] == u && tris_[v].neighbor[1] == w &&
         tris_[w].neighbor[1] == v && tris_[w].neighbor[2] == u && tris_[u].neighbor[2] == w;
}

TriangleId Triangulation::merge_3to1(const std::array<TriangleId, 3>& cycle) {
  if (!is_canonical_3cycle(cycle)) fault("merge_3to1: not a canonical 3-cycle");
  const TriangleId u = cycle[0], v = cycle[1], w = cycle[2];
  // External side of u is 1, of v is 2, of w is 0.
  const std::array<TriangleId, 3> by_ext{w, u, v};

  VertexId center = tris_[u].corner[1];
  if (center != tris_[v].corner[2] || center != tris_[w].corner[0])
    fault("merge_3to1: members do not share a center vertex");
  for (TriangleId m : {u, v, w}) {
    for (int k = 0; k < 3; ++k) {
      TriangleId ext = tris_[m].neighbor[k];
      if ((ext == u || ext == v || ext == w) != (k != (m == u ? 1 : (m == v ? 2 : 0))))
        fault("merge_3to1: gluing pattern inconsistent");
    }
  }

  TriangleId m = static_cast<TriangleId>(tris_.size());
  tris_.emplace_back();
  Triangle& M = tris_.back();
  M.alive = true;

  std::array<std::array<VertexId, 2>, 3> pair_ext;
  for (int j = 0; j < 3; ++j) {
    const Triangle& src = tris_[by_ext[j]];
    M.label.s[j] = src.label.s[j];
    pair_ext[j] = {src.corner[side_next(j)], src.corner[side_prev(j)]};
    TriangleId ext = src.neighbor[j];
    if (ext == u || ext == v || ext == w) fault("merge_3to1: external side glued into the cycle");
    M.neighbor[j] = ext;
  }
  if (!M.label.in_sigma()) fault("merge_3to1: merged label outside Sigma");

  for (int j = 0; j < 3; ++j) {
    const auto& a = pair_ext[side_next(j)];
    const auto& b = pair_ext[side_prev(j)];
    VertexId common = kNoVertex;
    for (VertexId x : a)
      for (VertexId y : b)
        if (x == y) common = x;
    if (common == kNoVertex) fault("merge_3to1: outer corners inconsistent");
    M.corner[j] = common;
  }

  for (int j = 0; j < 3; ++j) tris_[M.neighbor[j]].neighbor[j] = m;
  for (int j = 0; j < 3; ++j) set_incidence(M.corner[j], verts_[M.corner[j]].incidence - 1);

  verts_[center].alive = false;
  verts_[center].is_well = false;
  well_vertices_.erase(center);
  curved_vertices_.erase(center);

  for (TriangleId x : {u, v, w}) {
    tris_[x].alive = false;
    dynamic_tris_.erase(x);
  }
  dynamic_tris_.insert(m);
  if (origin_ == u || origin_ == v || origin_ == w) origin_ = m;

  expand_dirty(norm(centroid(m)) + 1.0);
  return m;
}

std::vector<std::array<TriangleId, 3>> Triangulation::find_3cycles() const {
  std::vector<TriangleId> scan(dynamic_tris_.begin(), dynamic_tris_.end());
  std::sort(scan.begin(), scan.end());
  std::vector<std::array<TriangleId, 3>> out;
  for (TriangleId u : scan) {
    if (!tris_[u].alive) continue;
    TriangleId v = tris_[u].neighbor[0];
    if (v == kNoTriangle) continue;
    TriangleId w = tris_[v].neighbor[1];
    if (w == kNoTriangle || w == u) continue;
    std::array<TriangleId, 3> c{u, v, w};
    if (is_canonical_3cycle(c)) out.push_back(c);
  }
  return out;
}

double Triangulation::vertex_deficit(VertexId v) const {
  if (!vertex_alive(v)) fault("vertex_deficit on dead vertex");
  return deficit_units(v) * (kPi / 3.0);
}

long Triangulation::global_deficit_units() const {
  long sum = 0;
  for (VertexId v : curved_vertices_) sum += deficit_units(v);
  return sum;
}

Vec2 Triangulation::slot_position(TriangleId t, int side) const {
  const Triangle& tr = tris_[t];
  Vec2 a = verts_[tr.corner[side_next(side)]].pos;
  Vec2 b = verts_[tr.corner[side_prev(side)]].pos;
  return 0.5 * (a + b);
}

Vec2 Triangulation::centroid(TriangleId t) const {
  const Triangle& tr = tris_[t];
  Vec2 c{0, 0};
  for (int k = 0; k < 3; ++k) c = c + (1.0 / 3.0) * verts_[tr.corner[k]].pos;
  return c;
}

std::optional<std::tuple<int, int, bool>> Triangulation::flat_coords(TriangleId t) const {
  if (!tris_[t].flat_cell) return std::nullopt;
  return std::make_tuple(tris_[t].cell_i, tris_[t].cell_j, tris_[t].cell_down);
}

void Triangulation::check_triangle(TriangleId t) const {
  std::ostringstream err;
  const Triangle& a = tris_[t];
  if (!a.alive) fault("check: dead triangle");
  if (!a.label.in_sigma()) fault("check: label outside Sigma");
  for (int k = 0; k < 3; ++k) {
    TriangleId n = a.neighbor[k];
    if (n == kNoTriangle) {
      if (!a.flat_cell) fault("check: dynamic triangle with missing neighbor");
      continue;
    }
    const Triangle& b = tris_[n];
    if (!b.alive) fault("check: neighbor dead");
    if (b.neighbor[k] != t) fault("check: gluing not involutive/side-preserving");
    if (a.label.s[k] == b.label.s[k]) fault("check: spin complementarity violated");
    if (a.label == b.label) fault("check: adjacent triangles share a label");
    VertexId a1 = a.corner[side_next(k)], a2 = a.corner[side_prev(k)];
    VertexId b1 = b.corner[side_next(k)], b2 = b.corner[side_prev(k)];
    bool same = (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
    if (!same) fault("check: shared edge corner mismatch");
  }
}

void Triangulation::check_all() const {
  for (TriangleId t = 0; t < tris_.size(); ++t) {
    if (tris_[t].alive) check_triangle(t);
  }
  if (global_deficit_units() != 0) fault("check: global deficit sum nonzero");
  // Every mutually glued triple must use each side index exactly once.
  for (TriangleId x : dynamic_tris_) {
    if (!tris_[x].alive) continue;
    for (int k = 0; k < 3; ++k) {
      TriangleId y = tris_[x].neighbor[k];
      if (y == kNoTriangle) continue;
      for (int l = 0; l < 3; ++l) {
        if (l == k) continue;
        TriangleId z = tris_[y].neighbor[l];
        if (z == kNoTriangle || z == x) continue;
        for (int mside = 0; mside < 3; ++mside) {
          if (tris_[z].neighbor[mside] == x) {
            if (mside == k || mside == l || l == k)
              fault("check: 3-cycle reuses a side index");
          }
        }
      }
    }
  }
}

std::vector<TriangleId> Triangulation::live_triangles() const {
  std::vector<TriangleId> out;
  for (TriangleId t = 0; t < tris_.size(); ++t)
    if (tris_[t].alive) out.push_back(t);
  return out;
}

std::vector<VertexId> Triangulation::live_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < verts_.size(); ++v)
    if (verts_[v].alive) out.push_back(v);
  return out;
}

std::string Triangulation::canonical_form() const {
  std::unordered_map<TriangleId, std::size_t> order;
  std::unordered_map<VertexId, std::size_t> vorder;
  std::deque<TriangleId> queue{origin_};
  order.emplace(origin_, 0);
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(9);
  while (!queue.empty()) {
    TriangleId t = queue.front();
    queue.pop_front();
    const Triangle& tr = tris_[t];
    out << 'T' << tr.label.str();
    for (int k = 0; k < 3; ++k) {
      TriangleId n = tr.neighbor[k];
      if (n == kNoTriangle) {
        out << "|-";
        continue;
      }
      auto it = order.find(n);
      if (it == order.end()) {
        it = order.emplace(n, order.size()).first;
        queue.push_back(n);
      }
      out << '|' << it->second;
    }
    for (int k = 0; k < 3; ++k) {
      VertexId v = tr.corner[k];
      auto it = vorder.find(v);
      if (it == vorder.end()) {
        it = vorder.emplace(v, vorder.size()).first;
        const Vertex& vx = verts_[v];
        out << "|V" << it->second << ':' << vx.pos.x << ',' << vx.pos.y << ',' << vx.incidence
            << ',' << (vx.is_well ? 1 : 0);
      } else {
        out << "|v" << it->second;
      }
    }
    out << (t == origin_ ? "#O\n" : "#\n");
  }
  return out.str();
}

}  // namespace triwalk
