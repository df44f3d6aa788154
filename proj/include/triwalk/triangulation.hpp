#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "triwalk/slot_map.hpp"
#include "triwalk/types.hpp"

namespace triwalk {

struct Triangle {
  std::array<TriangleId, 3> neighbor{kNoTriangle, kNoTriangle, kNoTriangle};
  std::array<VertexId, 3> corner{kNoVertex, kNoVertex, kNoVertex};
  TriLabel label;
  bool alive = false;
  // Still an untouched cell of the underlying flat lattice.
  bool flat_cell = false;
  std::int32_t cell_i = 0;
  std::int32_t cell_j = 0;
  bool cell_down = false;
};

struct Vertex {
  Vec2 pos;
  int incidence = 0;
  bool alive = false;
  bool is_well = false;
};

// Labeled triangulated surface, seen through its dual graph. Triangles glue
// side-k to side-k; each side's two slots carry complementary spin
// components. The flat lattice outside the touched region is materialized on
// demand and is exact: untouched cells are flat and carry zero field.
class Triangulation {
 public:
  explicit Triangulation(double initial_radius);

  TriangleId origin() const { return origin_; }
  bool tri_alive(TriangleId t) const { return t < tris_.size() && tris_[t].alive; }
  const Triangle& tri(TriangleId t) const { return tris_[t]; }
  TriangleId neighbor(TriangleId t, int side) const { return tris_[t].neighbor[side]; }
  TriLabel label(TriangleId t) const { return tris_[t].label; }
  bool vertex_alive(VertexId v) const { return v < verts_.size() && verts_[v].alive; }
  const Vertex& vertex(VertexId v) const { return verts_[v]; }

  // Makes all three neighbors of tri exist. Idempotent; only frontier flat
  // cells ever have missing neighbors.
  void ensure_materialized(TriangleId t);

  // Replaces tri by three triangles around a new center vertex. Child j keeps
  // the parent's gluing on side j; child 0 keeps the parent's label (and the
  // origin, if the parent held it).
  std::array<TriangleId, 3> split_1to3(TriangleId t);

  // Inverse of split_1to3 on a canonical 3-cycle (u,v,w) glued (u,v):0,
  // (v,w):1, (w,u):2. The field on the internal edges must already be zero.
  TriangleId merge_3to1(const std::array<TriangleId, 3>& cycle);

  // All mutually glued triples in canonical (u,v,w) order, sorted by u.
  std::vector<std::array<TriangleId, 3>> find_3cycles() const;

  bool is_canonical_3cycle(const std::array<TriangleId, 3>& c) const;

  // Deficit angle 2*pi - incidence*pi/3, in radians.
  double vertex_deficit(VertexId v) const;
  // Same quantity in exact units of pi/3.
  int deficit_units(VertexId v) const { return 6 - verts_[v].incidence; }
  // Signed sum of deficits over all non-flat vertices, in units of pi/3.
  long global_deficit_units() const;

  Vec2 slot_position(TriangleId t, int side) const;
  Vec2 centroid(TriangleId t) const;

  const std::unordered_set<VertexId>& well_vertices() const { return well_vertices_; }
  const std::unordered_set<VertexId>& curved_vertices() const { return curved_vertices_; }
  // Live triangles created by moves (the flat lattice has no 3-cycles, so
  // cycle search is confined to these).
  const std::unordered_set<TriangleId>& dynamic_triangles() const { return dynamic_tris_; }

  // Radius (from the origin centroid) of a disk containing every triangle
  // ever touched by a move or a nonzero amplitude.
  double dirty_radius() const { return dirty_radius_; }
  void expand_dirty(double r) {
    if (r > dirty_radius_) dirty_radius_ = r;
  }
  bool pristine_flat(TriangleId t) const { return tris_[t].flat_cell; }

  std::optional<std::tuple<int, int, bool>> flat_coords(TriangleId t) const;

  // Invariant checks; throw std::runtime_error with a diagnostic.
  void check_triangle(TriangleId t) const;
  void check_all() const;

  std::vector<TriangleId> live_triangles() const;
  std::vector<VertexId> live_vertices() const;

  // BFS signature from the origin: labels, adjacency shape, geometry. Two
  // triangulations are isomorphic (ids aside) iff the strings match.
  std::string canonical_form() const;

  std::size_t triangle_slots() const { return tris_.size(); }

 private:
  TriangleId get_or_create_cell(int i, int j, bool down);
  VertexId get_or_create_lattice_vertex(int a, int b);
  void set_incidence(VertexId v, int n);
  static std::uint64_t cell_key(int i, int j, bool down);
  static std::uint64_t lattice_key(int a, int b);

  std::vector<Triangle> tris_;
  std::vector<Vertex> verts_;
  OpenMap<TriangleId> cell_index_;
  OpenMap<VertexId> lattice_verts_;
  std::unordered_set<VertexId> well_vertices_;
  std::unordered_set<VertexId> curved_vertices_;
  std::unordered_set<TriangleId> dynamic_tris_;
  TriangleId origin_ = kNoTriangle;
  double dirty_radius_ = 1.0;
};

}  // namespace triwalk
