#pragma once

#include <array>
#include <string>
#include <vector>

#include "triwalk/field.hpp"
#include "triwalk/triangulation.hpp"

namespace triwalk {

struct Thresholds {
  double alpha = 1.0;  // 1-to-3 trigger: component probability above alpha
  double beta = 0.0;   // 3-to-1 trigger: well-internal probability below beta
};

enum class AssertLevel { None, Norm, Full };

struct MoveRecord {
  long step = 0;
  bool is_split = true;
  std::vector<TriangleId> ids;  // split: parent + children; merge: u,v,w + merged
  double prob = 0.0;            // probability at trigger time
};

struct SimState {
  Triangulation tri;
  Field field;
  CoinSet coins;
  Thresholds thr;
  long step_index = 0;
  std::vector<MoveRecord> move_log;
  AssertLevel assert_level = AssertLevel::Norm;

  SimState(double initial_radius, CoinSet c, Thresholds t);
};

// Triangles whose physical component probability exceeds alpha, in
// descending probability order (ties by id).
std::vector<std::pair<TriangleId, double>> detect_1to3(const SimState& s);

// 3-cycles whose internal probability is below beta, in descending internal
// probability order (ties by smallest member id).
std::vector<std::pair<std::array<TriangleId, 3>, double>> detect_3to1(const SimState& s);

double cycle_internal_prob(const SimState& s, const std::array<TriangleId, 3>& c);

// Evacuates a well's six internal slots by outward ray translations; a pure
// permutation of slot values. Faults if a ray revisits a triangle.
void translate_out(SimState& s, const std::array<TriangleId, 3>& cycle);

void apply_merges(SimState& s);
void apply_splits(SimState& s);

// One full timestep: rotation, coin, 3-to-1 moves, 1-to-3 moves.
void step(SimState& s);

}  // namespace triwalk
