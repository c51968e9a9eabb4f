#pragma once

#include <cstdint>
#include <vector>

#include "lae/data/trajectory_log.hpp"

namespace lae::data {

// Time-to-collision labeling: step t is unsafe iff some logged collision t_c
// of the same agent satisfies 0 <= t_c - t <= H. Pure function of (C, H, T).
std::vector<std::uint8_t> label_steps(const std::vector<int>& collision_steps,
                                      int T, int H);

// Per-agent labels for a whole log; result[agent][t].
std::vector<std::vector<std::uint8_t>> label_time_to_collision(
    const TrajectoryLog& log, int H);

}  // namespace lae::data
