#pragma once

#include <cstdint>
#include <vector>

#include "lae/sim/scenario.hpp"

namespace lae::sim {

struct AgentState {
  Vec2 position;
  Vec2 velocity;
  bool reached_goal = false;  // latches once within goal_tolerance
};

struct WorldState {
  int t = 0;
  std::vector<AgentState> agents;
  std::vector<int> collision_counts;  // cumulative, per agent
};

enum class CollisionKind : std::uint8_t { agent_obstacle = 0, agent_agent = 1 };

struct CollisionEvent {
  int step = 0;
  int agent = 0;  // for agent_agent, agent < partner
  CollisionKind kind = CollisionKind::agent_obstacle;
  int partner = 0;  // obstacle index or other agent index

  bool operator==(const CollisionEvent&) const = default;
};

// Tracks which contacts were already overlapping so sustained contact is
// counted once, at onset.
struct OverlapTable {
  int n_agents = 0;
  int n_obstacles = 0;
  std::vector<std::uint8_t> agent_obstacle;  // n_agents x n_obstacles
  std::vector<std::uint8_t> agent_agent;     // n_agents x n_agents, i<j used

  static OverlapTable make(const Scenario& s);
  std::uint8_t& ao(int agent, int obstacle) {
    return agent_obstacle[static_cast<std::size_t>(agent) * n_obstacles + obstacle];
  }
  std::uint8_t& aa(int i, int j) {
    return agent_agent[static_cast<std::size_t>(i) * n_agents + j];
  }
};

WorldState initial_state(const Scenario& s);

// Onset detection: an event fires iff distance < sum of radii now (strict)
// and the pair was not overlapping at the previous step. agent_agent pairs
// reported once with agent < partner. Scans agents ascending, obstacles
// before agent pairs, so event order is deterministic.
std::vector<CollisionEvent> detect_collisions(const WorldState& state,
                                              const Scenario& s,
                                              OverlapTable& overlap);

// Semi-implicit Euler: v' = clamp_norm(v + a*dt, v_max), p' = p + v'*dt.
// Arena walls clamp the position and zero the inward normal velocity
// component. Bodies pass through obstacles and each other; contact is
// recorded as events only. Events carry the index of the executed step
// (state.t before the call), which is also the index of the action that
// produced the onset. Throws DimensionMismatch on wrong action count.
std::vector<CollisionEvent> step(WorldState& state, const Scenario& s,
                                 const std::vector<Vec2>& actions,
                                 OverlapTable& overlap);

// True iff the agent latched reached_goal and logged zero collisions.
bool is_success(const AgentState& agent, int collisions_for_agent);

}  // namespace lae::sim
