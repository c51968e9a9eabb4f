#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/common.hpp"

namespace lae::sim {

// Everything the generator needs besides the seed. Dynamics limits ride
// along so a serialized scenario replays bit-exactly on its own.
struct ScenarioParams {
  double arena_side = 10.0;
  int n_agents = 8;
  double obstacle_density = 0.20;   // fraction of arena area
  double obstacle_radius = 0.30;    // meters
  double agent_radius = 0.10;       // meters
  int max_steps = 1500;
  double dt = 0.01;                 // seconds
  double v_max = 2.0;               // m/s
  double a_max = 4.0;               // m/s^2
  double goal_tolerance = 0.15;     // meters

  bool operator==(const ScenarioParams&) const = default;
};

struct Scenario {
  std::uint64_t seed = 0;
  ScenarioParams params;
  std::vector<Vec2> obstacles;  // centers; common radius in params
  std::vector<Vec2> starts;
  std::vector<Vec2> goals;

  int n_agents() const { return params.n_agents; }
  int n_obstacles() const { return static_cast<int>(obstacles.size()); }

  bool operator==(const Scenario&) const = default;

  // Canonical binary snapshot (magic "LAES"); byte-identical across runs.
  std::vector<std::uint8_t> to_bytes() const;
  static Scenario from_bytes(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static Scenario load(const std::string& path);

  // Human-readable form with the documented key set.
  std::string to_json() const;
};

// Rejection-samples obstacles, then starts, then goals from one seeded
// stream. Obstacles keep a 2*agent_radius surface gap so the arena stays
// traversable; starts/goals stay outside obstacles inflated by agent_radius
// and at least 2*agent_radius apart from each other.
// Throws PlacementFailure when the per-item attempt budget runs out.
Scenario generate_scenario(std::uint64_t seed, const ScenarioParams& params);

}  // namespace lae::sim
