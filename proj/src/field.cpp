#include "triwalk/field.hpp"

#include <cmath>
#include <stdexcept>

namespace triwalk {

namespace {
[[noreturn]] void fault(const char* msg) { throw std::runtime_error(std::string("walker: ") + msg); }
}  // namespace

bool Mat2::is_identity(double tol) const {
  return std::abs(m[0] - Amplitude{1, 0}) <= tol && std::abs(m[1]) <= tol &&
         std::abs(m[2]) <= tol && std::abs(m[3] - Amplitude{1, 0}) <= tol;
}

bool Mat2::is_unitary(double tol) const {
  // U U^dagger = I
  Amplitude a = m[0] * std::conj(m[0]) + m[1] * std::conj(m[1]);
  Amplitude b = m[0] * std::conj(m[2]) + m[1] * std::conj(m[3]);
  Amplitude c = m[2] * std::conj(m[0]) + m[3] * std::conj(m[1]);
  Amplitude d = m[2] * std::conj(m[2]) + m[3] * std::conj(m[3]);
  return std::abs(a - Amplitude{1, 0}) <= tol && std::abs(b) <= tol && std::abs(c) <= tol &&
         std::abs(d - Amplitude{1, 0}) <= tol;
}

Mat2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return Mat2{{Amplitude{s, 0}, Amplitude{s, 0}, Amplitude{s, 0}, Amplitude{-s, 0}}};
}

Mat2 identity2() { return Mat2{}; }

void CoinSet::validate() const {
  if (!W.is_unitary()) fault("coin W is not unitary");
  for (const Mat2& u : U)
    if (!u.is_unitary()) fault("gauge U_k is not unitary");
}

double Field::total_norm() const {
  double sum = 0.0;
  amps_.for_each([&](std::uint64_t, Amplitude v) { sum += std::norm(v); });
  return sum;
}

Field init_origin_state(const Triangulation& tri) {
  Field f;
  const double a = 1.0 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) f.set(tri.origin(), k, Amplitude{a, 0});
  return f;
}

void rotate_substep(Field& f, const Triangulation&) {
  SlotMap next(f.support_size());
  f.raw().for_each([&](std::uint64_t key, Amplitude v) {
    if (std::abs(v) < Field::kPruneEps) return;
    next.put(slot_key(slot_triangle(key), side_next(slot_side(key))), v);
  });
  f.raw() = std::move(next);
}

void coin_substep(Field& f, Triangulation& tri, const CoinSet& coins) {
  // The coin couples each slot to its neighbor across the edge.
  f.raw().for_each([&](std::uint64_t key, Amplitude) {
    TriangleId t = slot_triangle(key);
    if (tri.neighbor(t, slot_side(key)) == kNoTriangle) tri.ensure_materialized(t);
  });

  const SlotMap& old = f.raw();
  SlotMap next(old.size() + old.size() / 2);
  old.for_each([&](std::uint64_t key, Amplitude v) {
    TriangleId t = slot_triangle(key);
    int k = slot_side(key);
    TriangleId w = tri.neighbor(t, k);
    Spin st = tri.label(t).s[k];
    if (tri.label(w).s[k] == st) fault("edge slots carry the same spin");
    TriangleId up_tri, down_tri;
    Amplitude up, down;
    if (st == Spin::Up) {
      up_tri = t;
      down_tri = w;
      up = v;
      down = old.get(slot_key(w, k));
    } else {
      if (old.contains(slot_key(w, k))) return;  // processed from the up carrier
      up_tri = w;
      down_tri = t;
      up = Amplitude{0, 0};
      down = v;
    }
    auto [nu, nd] = coins.W.apply(up, down);
    if (std::abs(nu) >= Field::kPruneEps) next.put(slot_key(up_tri, k), nu);
    if (std::abs(nd) >= Field::kPruneEps) next.put(slot_key(down_tri, k), nd);
  });
  f.raw() = std::move(next);
}

void rotate_coin_substep(Field& f, Triangulation& tri, const CoinSet& coins) {
  // Pre-rotation slot (t, j) becomes post-rotation slot (t, side_next(j)),
  // which is the edge the coin acts on; its partner's post-rotation value is
  // the pre-rotation slot (w, j).
  f.raw().for_each([&](std::uint64_t key, Amplitude v) {
    if (std::abs(v) < Field::kPruneEps) return;
    TriangleId t = slot_triangle(key);
    if (tri.neighbor(t, side_next(slot_side(key))) == kNoTriangle) tri.ensure_materialized(t);
  });

  const SlotMap& old = f.raw();
  SlotMap next(old.size() + old.size() / 2);
  old.for_each([&](std::uint64_t key, Amplitude v) {
    if (std::abs(v) < Field::kPruneEps) return;
    TriangleId t = slot_triangle(key);
    int j = slot_side(key);
    int k = side_next(j);
    TriangleId w = tri.neighbor(t, k);
    Spin st = tri.label(t).s[k];
    if (tri.label(w).s[k] == st) fault("edge slots carry the same spin");
    Amplitude pv = old.get(slot_key(w, j));
    bool partner = std::abs(pv) >= Field::kPruneEps;
    TriangleId up_tri, down_tri;
    Amplitude up, down;
    if (st == Spin::Up) {
      up_tri = t;
      down_tri = w;
      up = v;
      down = partner ? pv : Amplitude{0, 0};
    } else {
      if (partner) return;  // processed from the up carrier
      up_tri = w;
      down_tri = t;
      up = Amplitude{0, 0};
      down = v;
    }
    auto [nu, nd] = coins.W.apply(up, down);
    if (std::abs(nu) >= Field::kPruneEps) next.put(slot_key(up_tri, k), nu);
    if (std::abs(nd) >= Field::kPruneEps) next.put(slot_key(down_tri, k), nd);
  });
  f.raw() = std::move(next);
}

Field gauge_to_physical(const Field& f, const Triangulation& tri, const CoinSet& coins) {
  Field out;
  if (coins.gauge_is_identity()) {
    out = f;
    return out;
  }
  const SlotMap& old = f.raw();
  old.for_each([&](std::uint64_t key, Amplitude v) {
    TriangleId t = slot_triangle(key);
    int k = slot_side(key);
    TriangleId w = tri.neighbor(t, k);
    Spin st = tri.label(t).s[k];
    Amplitude up, down;
    TriangleId up_tri = (st == Spin::Up) ? t : w;
    TriangleId down_tri = (st == Spin::Up) ? w : t;
    if (st == Spin::Down && w != kNoTriangle && old.contains(slot_key(w, k))) return;
    up = (st == Spin::Up) ? v : Amplitude{0, 0};
    down = (st == Spin::Up) ? ((w == kNoTriangle) ? Amplitude{0, 0} : old.get(slot_key(w, k)))
                            : v;
    auto [pu, pd] = coins.U[k].dagger().apply(up, down);
    if (up_tri != kNoTriangle) out.set(up_tri, k, pu);
    if (down_tri != kNoTriangle) out.set(down_tri, k, pd);
  });
  return out;
}

double component_prob(const Field& f, const Triangulation& tri, const CoinSet& coins,
                      TriangleId t) {
  double sum = 0.0;
  if (coins.gauge_is_identity()) {
    for (int k = 0; k < 3; ++k) sum += std::norm(f.at(t, k));
    return sum;
  }
  for (int k = 0; k < 3; ++k) {
    TriangleId w = tri.neighbor(t, k);
    Spin st = tri.label(t).s[k];
    Amplitude own = f.at(t, k);
    Amplitude other = (w == kNoTriangle) ? Amplitude{0, 0} : f.at(w, k);
    Amplitude up = (st == Spin::Up) ? own : other;
    Amplitude down = (st == Spin::Up) ? other : own;
    auto [pu, pd] = coins.U[k].dagger().apply(up, down);
    sum += std::norm(st == Spin::Up ? pu : pd);
  }
  return sum;
}

}  // namespace triwalk
