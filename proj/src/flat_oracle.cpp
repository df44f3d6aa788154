#include "triwalk/flat_oracle.hpp"

#include <cmath>

namespace triwalk {

namespace {
constexpr double kRoot3Half = 0.86602540378443864676;

struct OCell {
  int i, j;
  bool down;
};

OCell oracle_neighbor(OCell c, int side) {
  if (!c.down) {
    if (side == 0) return {c.i, c.j, true};
    if (side == 1) return {c.i - 1, c.j, true};
    return {c.i, c.j - 1, true};
  }
  if (side == 0) return {c.i, c.j, false};
  if (side == 1) return {c.i + 1, c.j, false};
  return {c.i, c.j + 1, false};
}

Vec2 vtx(int a, int b) { return {a + 0.5 * b - 0.5, (b - 1.0 / 3.0) * kRoot3Half}; }

}  // namespace

// 28-bit two's-complement coordinate fields.
std::uint64_t FlatOracle::pack(int i, int j, bool down, int side) {
  const std::uint64_t mask = (1ull << 28) - 1;
  return ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) & mask) << 31) |
         ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) & mask) << 3) |
         (static_cast<std::uint64_t>(down) << 2) | static_cast<std::uint64_t>(side);
}

void FlatOracle::unpack(std::uint64_t key, int& i, int& j, bool& down, int& side) {
  auto sext = [](std::uint64_t u) {
    std::int64_t v = static_cast<std::int64_t>(u << 36);
    return static_cast<int>(v >> 36);
  };
  side = static_cast<int>(key & 3u);
  down = ((key >> 2) & 1u) != 0;
  j = sext((key >> 3) & ((1ull << 28) - 1));
  i = sext((key >> 31) & ((1ull << 28) - 1));
}

FlatOracle::FlatOracle(CoinSet coins) : coins_(coins) { coins_.validate(); }

void FlatOracle::seed_origin() {
  const double a = 1.0 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) amp_[pack(0, 0, false, k)] = Amplitude{a, 0};
}

Amplitude FlatOracle::at(int i, int j, bool down, int side) const {
  auto it = amp_.find(pack(i, j, down, side));
  return it == amp_.end() ? Amplitude{0, 0} : it->second;
}

void FlatOracle::set(int i, int j, bool down, int side, Amplitude v) {
  if (std::abs(v) == 0.0) {
    amp_.erase(pack(i, j, down, side));
  } else {
    amp_[pack(i, j, down, side)] = v;
  }
}

void FlatOracle::step() {
  // Rotation: value on side k moves to side k+1 within the same cell.
  std::unordered_map<std::uint64_t, Amplitude> rotated;
  rotated.reserve(amp_.size() * 2);
  for (const auto& [key, v] : amp_) {
    if (std::abs(v) < Field::kPruneEps) continue;
    int i, j, side;
    bool down;
    unpack(key, i, j, down, side);
    rotated[pack(i, j, down, side_next(side))] = v;
  }

  // Coin: W on each edge's (up cell value, down cell value).
  std::unordered_map<std::uint64_t, Amplitude> next;
  next.reserve(rotated.size() * 2);
  for (const auto& [key, v] : rotated) {
    int i, j, side;
    bool down;
    unpack(key, i, j, down, side);
    OCell partner = oracle_neighbor({i, j, down}, side);
    auto pit = rotated.find(pack(partner.i, partner.j, partner.down, side));
    Amplitude up, dn;
    OCell up_cell, dn_cell;
    if (!down) {
      up = v;
      dn = pit == rotated.end() ? Amplitude{0, 0} : pit->second;
      up_cell = {i, j, false};
      dn_cell = partner;
    } else {
      if (pit != rotated.end()) continue;  // handled from the up cell
      up = Amplitude{0, 0};
      dn = v;
      up_cell = partner;
      dn_cell = {i, j, true};
    }
    auto [nu, nd] = coins_.W.apply(up, dn);
    if (std::abs(nu) >= Field::kPruneEps) next[pack(up_cell.i, up_cell.j, up_cell.down, side)] = nu;
    if (std::abs(nd) >= Field::kPruneEps) next[pack(dn_cell.i, dn_cell.j, dn_cell.down, side)] = nd;
  }
  amp_ = std::move(next);
}

double FlatOracle::total_norm() const {
  double sum = 0.0;
  for (const auto& [key, v] : amp_) sum += std::norm(v);
  return sum;
}

Vec2 FlatOracle::slot_position(int i, int j, bool down, int side) {
  Vec2 c[3];
  if (!down) {
    c[0] = vtx(i, j);
    c[1] = vtx(i + 1, j);
    c[2] = vtx(i, j + 1);
  } else {
    c[0] = vtx(i + 1, j + 1);
    c[1] = vtx(i, j + 1);
    c[2] = vtx(i + 1, j);
  }
  return 0.5 * (c[side_next(side)] + c[side_prev(side)]);
}

}  // namespace triwalk
