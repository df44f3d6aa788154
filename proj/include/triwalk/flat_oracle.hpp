#pragma once

#include <cstdint>
#include <unordered_map>

#include "triwalk/field.hpp"
#include "triwalk/types.hpp"

namespace triwalk {

// Reference walk on the static triangular lattice, indexed by cell
// coordinates instead of the dynamic graph, so equivalence tests against the
// main engine have independent failure modes. Up cells at (i,j) carry the up
// component on every side, down cells the down component; no moves ever.
class FlatOracle {
 public:
  explicit FlatOracle(CoinSet coins);

  // 1/sqrt(3) on the three slots of the up cell at the origin.
  void seed_origin();

  void step();

  Amplitude at(int i, int j, bool down, int side) const;
  void set(int i, int j, bool down, int side, Amplitude v);
  double total_norm() const;
  std::size_t support_size() const { return amp_.size(); }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& [key, v] : amp_) {
      int i, j, side;
      bool down;
      unpack(key, i, j, down, side);
      f(i, j, down, side, v);
    }
  }

  // Edge midpoint on the unit-edge lattice, origin cell centroid at (0,0).
  static Vec2 slot_position(int i, int j, bool down, int side);

 private:
  static std::uint64_t pack(int i, int j, bool down, int side);
  static void unpack(std::uint64_t key, int& i, int& j, bool& down, int& side);

  std::unordered_map<std::uint64_t, Amplitude> amp_;
  CoinSet coins_;
};

}  // namespace triwalk
