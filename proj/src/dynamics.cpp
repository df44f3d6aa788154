#include "triwalk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace triwalk {

namespace {

[[noreturn]] void fault(const std::string& msg) { throw std::runtime_error("dynamics: " + msg); }

// External side of canonical cycle member (u,v,w).
constexpr int kExtSide[3] = {1, 2, 0};

// Shifts the side-k slot values outward along the ray p -> nb(nb(p,j),k),
// starting from cycle member x with external side j.
void ray_shift(SimState& s, TriangleId x, int j, int k) {
  Triangulation& tri = s.tri;
  Field& f = s.field;
  // Visited marks are epoch stamps (one epoch per ray) so long rays do not
  // pay per-hop hashing or allocation.
  static thread_local std::vector<std::uint32_t> stamp;
  static thread_local std::uint32_t epoch = 0;
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }
  auto mark = [&](TriangleId t) {
    if (t >= stamp.size()) stamp.resize(t + t / 4 + 64, 0);
    if (stamp[t] == epoch) return false;
    stamp[t] = epoch;
    return true;
  };
  mark(x);

  Amplitude carried = f.at(x, k);
  f.erase(x, k);
  TriangleId p = x;
  for (long iter = 0;; ++iter) {
    if (iter > 100000000L) fault("ray failed to terminate");
    tri.ensure_materialized(p);
    TriangleId q = tri.neighbor(p, j);
    tri.ensure_materialized(q);
    TriangleId pn = tri.neighbor(q, k);
    if (!mark(q) || !mark(pn))
      fault("ray revisits a triangle (Lemma 2 violation)");

    Amplitude old = f.at(pn, k);
    // The shift ends at the first position where both the carried value and
    // the slot are zero: the occupied prefix of the ray has moved one
    // position outward and writing further would change nothing it carries.
    // (Values past a fully empty position stay put; walking on would drag
    // the entire line's support outward through arbitrarily long empty
    // stretches and is what makes dense merge bursts intractable.)
    if (std::abs(carried) == 0.0 && std::abs(old) == 0.0) break;
    if (std::abs(carried) >= Field::kPruneEps) {
      f.set(pn, k, carried);
      tri.expand_dirty(norm(tri.centroid(pn)) + 0.4);
    } else {
      f.erase(pn, k);
    }
    carried = old;
    p = pn;
  }
}

void check_move_neighborhood(const SimState& s, const std::vector<TriangleId>& around) {
  for (TriangleId t : around) {
    if (!s.tri.tri_alive(t)) continue;
    s.tri.check_triangle(t);
    for (int k = 0; k < 3; ++k) {
      TriangleId n = s.tri.neighbor(t, k);
      if (n != kNoTriangle) s.tri.check_triangle(n);
    }
  }
  if (s.tri.global_deficit_units() != 0) fault("Gauss-Bonnet violated after move");
}

}  // namespace

SimState::SimState(double initial_radius, CoinSet c, Thresholds t)
    : tri(initial_radius), coins(c), thr(t) {
  coins.validate();
  if (!(thr.alpha >= 0.0 && thr.alpha <= 1.0 && thr.beta >= 0.0 && thr.beta <= 1.0))
    fault("thresholds must lie in [0,1]");
  field = init_origin_state(tri);
  double r = 0.0;
  field.for_each([&](TriangleId id, int k, Amplitude) {
    r = std::max(r, norm(tri.slot_position(id, k)));
  });
  tri.expand_dirty(r + 1.0);
}

std::vector<std::pair<TriangleId, double>> detect_1to3(const SimState& s) {
  // A triangle can only clear alpha if one of its edges holds a slot with
  // probability above alpha/6.
  const double slot_cut = s.thr.alpha / 6.0;
  std::vector<TriangleId> cand;
  s.field.for_each([&](TriangleId t, int k, Amplitude v) {
    if (std::norm(v) > slot_cut) {
      cand.push_back(t);
      TriangleId w = s.tri.neighbor(t, k);
      if (w != kNoTriangle) cand.push_back(w);
    }
  });
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<std::pair<TriangleId, double>> out;
  for (TriangleId t : cand) {
    if (!s.tri.tri_alive(t)) continue;
    double p = component_prob(s.field, s.tri, s.coins, t);
    if (p > s.thr.alpha) out.emplace_back(t, p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

double cycle_internal_prob(const SimState& s, const std::array<TriangleId, 3>& c) {
  // Edge spinor norms are gauge invariant, so this is the same in both the
  // stored and the physical field.
  double p = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (k == kExtSide[i]) continue;
      p += std::norm(s.field.at(c[i], k));
    }
  }
  return p;
}

std::vector<std::pair<std::array<TriangleId, 3>, double>> detect_3to1(const SimState& s) {
  std::vector<std::pair<std::array<TriangleId, 3>, double>> out;
  for (const auto& c : s.tri.find_3cycles()) {
    double p = cycle_internal_prob(s, c);
    if (p < s.thr.beta) out.emplace_back(c, p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return std::min({a.first[0], a.first[1], a.first[2]}) <
           std::min({b.first[0], b.first[1], b.first[2]});
  });
  return out;
}

void translate_out(SimState& s, const std::array<TriangleId, 3>& cycle) {
  if (!s.tri.is_canonical_3cycle(cycle)) fault("translate_out: not a canonical 3-cycle");
  for (int i = 0; i < 3; ++i) {
    int j = kExtSide[i];
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      ray_shift(s, cycle[i], j, k);
    }
  }
}

void apply_merges(SimState& s) {
  auto cands = detect_3to1(s);
  for (auto& [c, detect_prob] : cands) {
    // An earlier merge or ray this step may have invalidated the cycle or
    // moved probability into it; re-check the trigger condition.
    if (!s.tri.is_canonical_3cycle(c)) continue;
    double p = cycle_internal_prob(s, c);
    if (!(p < s.thr.beta)) continue;

    translate_out(s, c);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        if (k == kExtSide[i]) continue;
        if (s.field.has(c[i], k)) fault("internal slot nonzero after translation");
      }
    }
    std::array<Amplitude, 3> ext_vals;
    for (int i = 0; i < 3; ++i) {
      ext_vals[i] = s.field.at(c[i], kExtSide[i]);
      s.field.erase(c[i], kExtSide[i]);
    }
    TriangleId m = s.tri.merge_3to1(c);
    for (int i = 0; i < 3; ++i) s.field.set(m, kExtSide[i], ext_vals[i]);

    s.move_log.push_back(MoveRecord{s.step_index, false, {c[0], c[1], c[2], m}, p});
    if (s.assert_level == AssertLevel::Full) check_move_neighborhood(s, {m});
  }
}

void apply_splits(SimState& s) {
  auto cands = detect_1to3(s);
  for (auto& [t, p] : cands) {
    if (!s.tri.tri_alive(t)) continue;
    std::array<Amplitude, 3> vals;
    for (int j = 0; j < 3; ++j) {
      vals[j] = s.field.at(t, j);
      s.field.erase(t, j);
    }
    auto kids = s.tri.split_1to3(t);
    // Pre-existing values stay on the surviving external sides; the six new
    // internal slots start at zero.
    for (int j = 0; j < 3; ++j) s.field.set(kids[j], j, vals[j]);

    s.move_log.push_back(MoveRecord{s.step_index, true, {t, kids[0], kids[1], kids[2]}, p});
    if (s.assert_level == AssertLevel::Full)
      check_move_neighborhood(s, {kids[0], kids[1], kids[2]});
  }
}

void step(SimState& s) {
  rotate_coin_substep(s.field, s.tri, s.coins);
  // The coin can extend the support by at most one adjacency.
  s.tri.expand_dirty(s.tri.dirty_radius() + 0.6);
  apply_merges(s);
  apply_splits(s);
  ++s.step_index;

  if (s.assert_level != AssertLevel::None) {
    double n = s.field.total_norm();
    if (std::abs(n - 1.0) > 1e-9) fault("norm drifted beyond tolerance");
    if (s.tri.global_deficit_units() != 0) fault("Gauss-Bonnet violated");
  }
  if (s.assert_level == AssertLevel::Full) s.tri.check_all();
}

}  // namespace triwalk
