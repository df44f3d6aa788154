#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace triwalk {

using TriangleId = std::uint32_t;
using VertexId = std::uint32_t;

inline constexpr TriangleId kNoTriangle = 0xffffffffu;
inline constexpr VertexId kNoVertex = 0xffffffffu;

using Amplitude = std::complex<double>;

// Sides are 0-based in code; configs and file formats use 1..3.
inline int side_next(int k) { return k == 2 ? 0 : k + 1; }
inline int side_prev(int k) { return k == 0 ? 2 : k - 1; }

enum class Spin : std::uint8_t { Up = 0, Down = 1 };

inline Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

// Which component of each side a triangle carries.
struct TriLabel {
  std::array<Spin, 3> s{Spin::Up, Spin::Up, Spin::Up};

  // The four admissible labels are uuu, ddd, uud, ddu: the first two
  // components always agree.
  bool in_sigma() const { return s[0] == s[1]; }

  TriLabel flipped() const { return TriLabel{{flip(s[0]), flip(s[1]), flip(s[2])}}; }

  bool operator==(const TriLabel& o) const { return s == o.s; }
  bool operator!=(const TriLabel& o) const { return s != o.s; }

  std::string str() const {
    std::string out;
    for (Spin x : s) out += (x == Spin::Up ? 'u' : 'd');
    return out;
  }
};

inline TriLabel all_up() { return TriLabel{{Spin::Up, Spin::Up, Spin::Up}}; }
inline TriLabel all_down() { return TriLabel{{Spin::Down, Spin::Down, Spin::Down}}; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// A slot is one triangle's view of one of its sides.
inline std::uint64_t slot_key(TriangleId t, int side) {
  return (static_cast<std::uint64_t>(t) << 2) | static_cast<std::uint64_t>(side);
}
inline TriangleId slot_triangle(std::uint64_t key) { return static_cast<TriangleId>(key >> 2); }
inline int slot_side(std::uint64_t key) { return static_cast<int>(key & 3u); }

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace triwalk
