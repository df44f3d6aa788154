#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "triwalk/slot_map.hpp"
#include "triwalk/triangulation.hpp"
#include "triwalk/types.hpp"

namespace triwalk {

// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<Amplitude, 4> m{Amplitude{1, 0}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{1, 0}};

  std::pair<Amplitude, Amplitude> apply(Amplitude up, Amplitude down) const {
    return {m[0] * up + m[1] * down, m[2] * up + m[3] * down};
  }
  Mat2 dagger() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }
  bool is_identity(double tol = 1e-15) const;
  bool is_unitary(double tol = 1e-12) const;
};

Mat2 hadamard();
Mat2 identity2();

// The edge unitary W plus the per-side gauge unitaries U_k relating the
// stored field to the physical one.
struct CoinSet {
  Mat2 W = hadamard();
  std::array<Mat2, 3> U{identity2(), identity2(), identity2()};

  bool gauge_is_identity() const {
    return U[0].is_identity() && U[1].is_identity() && U[2].is_identity();
  }
  void validate() const;  // throws if any matrix is not unitary within 1e-12
};

// Finite-support field over edge-component slots; stores the gauged field.
class Field {
 public:
  static constexpr double kPruneEps = 1e-15;

  Amplitude at(TriangleId t, int side) const { return amps_.get(slot_key(t, side)); }
  bool has(TriangleId t, int side) const { return amps_.contains(slot_key(t, side)); }

  void set(TriangleId t, int side, Amplitude v) {
    if (std::abs(v) == 0.0) {
      amps_.erase(slot_key(t, side));
    } else {
      amps_.put(slot_key(t, side), v);
    }
  }
  void erase(TriangleId t, int side) { amps_.erase(slot_key(t, side)); }

  double total_norm() const;
  std::size_t support_size() const { return amps_.size(); }

  template <class F>
  void for_each(F&& f) const {
    amps_.for_each([&](std::uint64_t key, Amplitude v) { f(slot_triangle(key), slot_side(key), v); });
  }

  SlotMap& raw() { return amps_; }
  const SlotMap& raw() const { return amps_; }

 private:
  SlotMap amps_;
};

// Equal-weight state on the three slots of the origin triangle.
Field init_origin_state(const Triangulation& tri);

// Cyclic shift of each triangle's three carried values: the new value on
// side k is the old value on side k-1.
void rotate_substep(Field& f, const Triangulation& tri);

// Applies W to each edge's (up, down) spinor; materializes missing
// neighbors of support triangles first.
void coin_substep(Field& f, Triangulation& tri, const CoinSet& coins);

// Both substeps in one pass over the support. The rotation is pure key
// arithmetic (the post-rotation slot (t, k) holds the pre-rotation slot
// (t, k-1)), so the coin can read its inputs straight from the un-rotated
// map and skip a full rebuild. Produces the same field as rotate_substep
// followed by coin_substep.
void rotate_coin_substep(Field& f, Triangulation& tri, const CoinSet& coins);

// Converts the stored gauged field to the physical one (U_k^dagger per edge
// of side k).
Field gauge_to_physical(const Field& f, const Triangulation& tri, const CoinSet& coins);

// Probability carried by one triangle, evaluated on the physical field.
double component_prob(const Field& f, const Triangulation& tri, const CoinSet& coins,
                      TriangleId t);

}  // namespace triwalk
