#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "triwalk/triangulation.hpp"

using namespace triwalk;

namespace {

// Geometric incidence: live triangles actually touching the vertex.
int count_incident(const Triangulation& g, VertexId v) {
  int n = 0;
  for (TriangleId t : g.live_triangles()) {
    for (int k = 0; k < 3; ++k)
      if (g.tri(t).corner[k] == v) ++n;
  }
  return n;
}

// All label assignments for a split that satisfy the structural constraints:
// internal-edge complementarity, unchanged carried spin on each external
// side, Sigma membership, and child 0 keeping the parent label.
std::vector<std::array<TriLabel, 3>> solve_split_labels(TriLabel parent) {
  std::vector<TriLabel> sigma = {all_up(), all_down(),
                                 TriLabel{{Spin::Up, Spin::Up, Spin::Down}},
                                 TriLabel{{Spin::Down, Spin::Down, Spin::Up}}};
  std::vector<std::array<TriLabel, 3>> found;
  for (const auto& l0 : sigma) {
    for (const auto& l1 : sigma) {
      for (const auto& l2 : sigma) {
        if (!(l0 == parent)) continue;
        // external carried spins unchanged
        if (l0.s[0] != parent.s[0] || l1.s[1] != parent.s[1] || l2.s[2] != parent.s[2]) continue;
        // internal gluings (c1,c2):0, (c2,c0):1, (c0,c1):2 must be complementary
        if (l1.s[0] == l2.s[0]) continue;
        if (l2.s[1] == l0.s[1]) continue;
        if (l0.s[2] == l1.s[2]) continue;
        found.push_back({l0, l1, l2});
      }
    }
  }
  return found;
}

}  // namespace

TEST_CASE("new_flat builds a flat alternating grid") {
  Triangulation g(2.0);
  CHECK(g.label(g.origin()) == all_up());
  for (int k = 0; k < 3; ++k) {
    TriangleId n = g.neighbor(g.origin(), k);
    REQUIRE(n != kNoTriangle);
    CHECK(g.label(n) == all_down());
    CHECK(g.neighbor(n, k) == g.origin());
  }
  for (VertexId v : g.live_vertices()) CHECK(g.vertex_deficit(v) == 0.0);
  CHECK(g.global_deficit_units() == 0);
  g.check_all();
}

TEST_CASE("ensure_materialized extends the frontier and is idempotent") {
  Triangulation g(1.0);
  // find a boundary triangle
  TriangleId boundary = kNoTriangle;
  for (TriangleId t : g.live_triangles()) {
    for (int k = 0; k < 3; ++k)
      if (g.neighbor(t, k) == kNoTriangle) boundary = t;
  }
  REQUIRE(boundary != kNoTriangle);
  std::size_t before = g.live_triangles().size();
  g.ensure_materialized(boundary);
  std::size_t after = g.live_triangles().size();
  CHECK(after > before);
  CHECK(after <= before + 3);
  for (int k = 0; k < 3; ++k) CHECK(g.neighbor(boundary, k) != kNoTriangle);
  g.ensure_materialized(boundary);
  CHECK(g.live_triangles().size() == after);
  g.check_all();
}

TEST_CASE("a materialized 2-ring closes each hexagon: geometric incidence 6") {
  Triangulation g(1.0);
  g.ensure_materialized(g.origin());
  for (int k = 0; k < 3; ++k) {
    TriangleId n = g.neighbor(g.origin(), k);
    g.ensure_materialized(n);
    for (int l = 0; l < 3; ++l) g.ensure_materialized(g.neighbor(n, l));
  }
  for (int k = 0; k < 3; ++k) {
    VertexId v = g.tri(g.origin()).corner[k];
    CHECK(count_incident(g, v) == 6);
    CHECK(g.vertex(v).incidence == 6);
  }
}

TEST_CASE("split label rule is the unique constraint solution for every Sigma label") {
  std::vector<TriLabel> sigma = {all_up(), all_down(),
                                 TriLabel{{Spin::Up, Spin::Up, Spin::Down}},
                                 TriLabel{{Spin::Down, Spin::Down, Spin::Up}}};
  for (const auto& parent : sigma) {
    auto solutions = solve_split_labels(parent);
    REQUIRE(solutions.size() == 1);

    // Build a grid whose origin carries this label via flips of the flat one.
    Triangulation g(2.0);
    TriangleId target = g.origin();
    auto kids0 = g.split_1to3(target);
    // child labels from an up parent: uuu, uud, ddu
    (void)kids0;
    // Instead check directly against the implementation on an up/down cell,
    // then verify the solver agrees for all four labels structurally.
    if (parent == all_up()) {
      Triangulation h(2.0);
      auto kids = h.split_1to3(h.origin());
      CHECK(h.label(kids[0]) == solutions[0][0]);
      CHECK(h.label(kids[1]) == solutions[0][1]);
      CHECK(h.label(kids[2]) == solutions[0][2]);
      CHECK(h.label(kids[1]) == TriLabel{{Spin::Up, Spin::Up, Spin::Down}});
      CHECK(h.label(kids[2]) == TriLabel{{Spin::Down, Spin::Down, Spin::Up}});
    }
    if (parent == TriLabel{{Spin::Up, Spin::Up, Spin::Down}}) {
      // split a uud triangle obtained by splitting an up cell first
      Triangulation h(2.0);
      auto kids = h.split_1to3(h.origin());
      REQUIRE(h.label(kids[1]) == parent);
      auto kk = h.split_1to3(kids[1]);
      CHECK(h.label(kk[0]) == solutions[0][0]);
      CHECK(h.label(kk[1]) == solutions[0][1]);
      CHECK(h.label(kk[2]) == solutions[0][2]);
      CHECK(h.label(kk[1]) == all_up());
      CHECK(h.label(kk[2]) == all_down());
      h.check_all();
    }
  }
}

TEST_CASE("split bookkeeping: deficits, wells, origin") {
  Triangulation g(2.0);
  std::array<VertexId, 3> old_corners = g.tri(g.origin()).corner;
  TriangleId parent = g.origin();
  auto kids = g.split_1to3(parent);

  CHECK_FALSE(g.tri_alive(parent));
  CHECK(g.origin() == kids[0]);
  CHECK(g.label(g.origin()) == all_up());

  REQUIRE(g.well_vertices().size() == 1);
  VertexId center = *g.well_vertices().begin();
  CHECK(g.vertex(center).incidence == 3);
  CHECK(g.vertex_deficit(center) == doctest::Approx(kPi));
  for (VertexId v : old_corners) {
    CHECK(g.vertex(v).incidence == 7);
    CHECK(g.vertex_deficit(v) == doctest::Approx(-kPi / 3.0));
  }
  CHECK(g.global_deficit_units() == 0);
  g.check_all();
}

TEST_CASE("find_3cycles: flat empty, one per disjoint split, canonical order") {
  Triangulation g(3.0);
  CHECK(g.find_3cycles().empty());

  auto kids = g.split_1to3(g.origin());
  auto cycles = g.find_3cycles();
  REQUIRE(cycles.size() == 1);
  // canonical (u,v,w) = (child1, child2, child0)
  CHECK(cycles[0][0] == kids[1]);
  CHECK(cycles[0][1] == kids[2]);
  CHECK(cycles[0][2] == kids[0]);

  // split a far-away triangle for a second disjoint cycle
  TriangleId far = kNoTriangle;
  for (TriangleId t : g.live_triangles()) {
    if (!g.tri(t).flat_cell) continue;
    if (norm(g.centroid(t)) > 2.0) far = t;
  }
  REQUIRE(far != kNoTriangle);
  g.ensure_materialized(far);
  g.split_1to3(far);
  CHECK(g.find_3cycles().size() == 2);
  g.check_all();
}

TEST_CASE("merge inverts split exactly (topology, labels, geometry, origin)") {
  Triangulation g(2.0);
  g.ensure_materialized(g.origin());
  std::string before = g.canonical_form();
  auto kids = g.split_1to3(g.origin());
  std::string during = g.canonical_form();
  CHECK(during != before);
  auto cycles = g.find_3cycles();
  REQUIRE(cycles.size() == 1);
  TriangleId m = g.merge_3to1(cycles[0]);
  CHECK(g.origin() == m);
  CHECK(g.label(m) == all_up());
  CHECK(g.canonical_form() == before);
  CHECK(g.well_vertices().empty());
  CHECK(g.global_deficit_units() == 0);
  for (int k = 0; k < 3; ++k) CHECK(g.vertex_deficit(g.tri(m).corner[k]) == 0.0);
  g.check_all();
  (void)kids;
}

TEST_CASE("merge assembles sides from the members owning them") {
  Triangulation g(2.0);
  std::array<TriangleId, 3> old_nb{};
  for (int k = 0; k < 3; ++k) old_nb[k] = g.neighbor(g.origin(), k);
  auto kids = g.split_1to3(g.origin());
  auto cycles = g.find_3cycles();
  REQUIRE(cycles.size() == 1);
  // cycle = (u,v,w) = (kids1, kids2, kids0); external sides 1-based: u->2, v->3, w->1.
  TriangleId m = g.merge_3to1(cycles[0]);
  for (int k = 0; k < 3; ++k) {
    CHECK(g.neighbor(m, k) == old_nb[k]);
    CHECK(g.neighbor(old_nb[k], k) == m);
  }
  (void)kids;
}

TEST_CASE("merge faults on a non-cycle") {
  Triangulation g(2.0);
  TriangleId o = g.origin();
  std::array<TriangleId, 3> bogus{o, g.neighbor(o, 0), g.neighbor(o, 1)};
  CHECK_THROWS(g.merge_3to1(bogus));
}

TEST_CASE("slot positions: shared edges agree; split edges at corner-centroid midpoints") {
  Triangulation g(2.0);
  for (TriangleId t : g.live_triangles()) {
    for (int k = 0; k < 3; ++k) {
      TriangleId w = g.neighbor(t, k);
      if (w == kNoTriangle) continue;
      Vec2 a = g.slot_position(t, k);
      Vec2 b = g.slot_position(w, k);
      CHECK(a.x == doctest::Approx(b.x).epsilon(1e-14));
      CHECK(a.y == doctest::Approx(b.y).epsilon(1e-14));
    }
  }
  Vec2 c0 = g.centroid(g.origin());
  std::array<Vec2, 3> corners;
  for (int k = 0; k < 3; ++k) corners[k] = g.vertex(g.tri(g.origin()).corner[k]).pos;
  auto kids = g.split_1to3(g.origin());
  // internal edge (kids0, kids1) on side 2 joins parent corner 2... check the
  // generic property: each internal midpoint is a corner-centroid midpoint.
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;  // external side
      Vec2 mid = g.slot_position(kids[j], k);
      bool matches = false;
      for (const Vec2& c : corners) {
        Vec2 expect = 0.5 * (c + c0);
        if (std::abs(expect.x - mid.x) < 1e-12 && std::abs(expect.y - mid.y) < 1e-12)
          matches = true;
      }
      CHECK(matches);
    }
  }
}

TEST_CASE("vertex_deficit formula") {
  Triangulation g(2.0);
  VertexId v = g.tri(g.origin()).corner[0];
  CHECK(g.vertex_deficit(v) == 0.0);
  auto kids = g.split_1to3(g.origin());
  VertexId center = *g.well_vertices().begin();
  CHECK(g.vertex_deficit(center) == doctest::Approx(kPi));
  CHECK(g.vertex(v).incidence == 7);
  CHECK(g.vertex_deficit(v) == doctest::Approx(-kPi / 3.0));
  (void)kids;
}

TEST_CASE("randomized split/merge fuzz keeps all structural invariants") {
  Triangulation g(3.0);
  std::mt19937_64 rng(20240817);
  std::set<TriangleId> seen_dead;
  for (int round = 0; round < 200; ++round) {
    auto live = g.live_triangles();
    std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
    bool do_merge = (rng() & 1u) && !g.find_3cycles().empty();
    if (do_merge) {
      auto cycles = g.find_3cycles();
      std::uniform_int_distribution<std::size_t> pc(0, cycles.size() - 1);
      auto c = cycles[pc(rng)];
      for (TriangleId t : c) seen_dead.insert(t);
      g.merge_3to1(c);
    } else {
      TriangleId t = live[pick(rng)];
      if (norm(g.centroid(t)) > 6.0) continue;
      g.ensure_materialized(t);
      seen_dead.insert(t);
      auto kids = g.split_1to3(t);
      // ids are never reused
      for (TriangleId k : kids) CHECK(seen_dead.count(k) == 0);
    }
    g.check_all();
    CHECK(g.global_deficit_units() == 0);
  }
}
