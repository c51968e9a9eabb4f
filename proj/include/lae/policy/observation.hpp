#pragma once

#include <array>

#include "lae/sim/world.hpp"

namespace lae::policy {

inline constexpr int kSelfDim = 6;    // goal vector, velocity, zero padding
inline constexpr int kNeighborCount = 2;
inline constexpr int kNeighFeat = 4;  // relative position, relative velocity
inline constexpr int kNeighDim = kNeighborCount * kNeighFeat;
inline constexpr int kSdfGrid = 3;
inline constexpr int kObstDim = kSdfGrid * kSdfGrid;
inline constexpr int kObsDim = kSelfDim + kNeighDim + kObstDim;

// 3x3 SDF sample grid spans +/- kSdfHalfExtent around the agent; values are
// clamped to +/- kSdfClamp.
inline constexpr double kSdfHalfExtent = 2.0;
inline constexpr double kSdfClamp = 2.0;

struct Observation {
  std::array<double, kSelfDim> self_part{};
  std::array<double, kNeighDim> neigh_part{};
  std::array<double, kObstDim> obst_part{};
};

// Exact signed distance from p to the nearest obstacle surface (positive
// outside), clamped to +/- kSdfClamp. No obstacles -> +kSdfClamp.
double sdf_at(const sim::Scenario& s, const Vec2& p);

// Deterministic local view for one agent:
//  - self: goal - position (2), velocity (2), zero padding (2)
//  - neighbors: the 2 nearest others by distance (ties by index), each as
//    relative position and velocity; missing slots use the far sentinel
//    (arena_side, arena_side) with zero relative velocity
//  - obstacles: row-major 3x3 SDF samples, y on the outer axis from -extent
//    to +extent
Observation observe(const sim::WorldState& world, const sim::Scenario& s,
                    int agent);

}  // namespace lae::policy
