#include "lae/sim/world.hpp"

#include <algorithm>

namespace lae::sim {

OverlapTable OverlapTable::make(const Scenario& s) {
  OverlapTable t;
  t.n_agents = s.n_agents();
  t.n_obstacles = s.n_obstacles();
  t.agent_obstacle.assign(
      static_cast<std::size_t>(t.n_agents) * t.n_obstacles, 0);
  t.agent_agent.assign(static_cast<std::size_t>(t.n_agents) * t.n_agents, 0);
  return t;
}

WorldState initial_state(const Scenario& s) {
  WorldState w;
  w.t = 0;
  w.agents.resize(s.n_agents());
  for (int i = 0; i < s.n_agents(); ++i) {
    w.agents[i].position = s.starts[i];
    w.agents[i].velocity = Vec2{0.0, 0.0};
    w.agents[i].reached_goal =
        distance(s.starts[i], s.goals[i]) <= s.params.goal_tolerance;
  }
  w.collision_counts.assign(s.n_agents(), 0);
  return w;
}

std::vector<CollisionEvent> detect_collisions(const WorldState& state,
                                              const Scenario& s,
                                              OverlapTable& overlap) {
  std::vector<CollisionEvent> events;
  const int n = s.n_agents();
  const double r_a = s.params.agent_radius;
  const double r_o = s.params.obstacle_radius;

  for (int i = 0; i < n; ++i) {
    const Vec2 p = state.agents[i].position;
    for (int j = 0; j < s.n_obstacles(); ++j) {
      bool now = distance(p, s.obstacles[j]) < r_a + r_o;
      if (now && !overlap.ao(i, j))
        events.push_back({state.t, i, CollisionKind::agent_obstacle, j});
      overlap.ao(i, j) = now ? 1 : 0;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool now =
          distance(state.agents[i].position, state.agents[j].position) <
          2.0 * r_a;
      if (now && !overlap.aa(i, j))
        events.push_back({state.t, i, CollisionKind::agent_agent, j});
      overlap.aa(i, j) = now ? 1 : 0;
    }
  }
  return events;
}

std::vector<CollisionEvent> step(WorldState& state, const Scenario& s,
                                 const std::vector<Vec2>& actions,
                                 OverlapTable& overlap) {
  const int n = s.n_agents();
  if (static_cast<int>(actions.size()) != n)
    fail(ErrorKind::DimensionMismatch,
         "expected " + std::to_string(n) + " actions, got " +
             std::to_string(actions.size()));

  const auto& p = s.params;
  const double lo = p.agent_radius;
  const double hi = p.arena_side - p.agent_radius;
  const int exec_step = state.t;  // events carry the executed step's index

  for (int i = 0; i < n; ++i) {
    AgentState& a = state.agents[i];
    Vec2 acc = clamp_norm(actions[i], p.a_max);
    a.velocity = clamp_norm(a.velocity + acc * p.dt, p.v_max);
    a.position += a.velocity * p.dt;

    if (a.position.x < lo) {
      a.position.x = lo;
      if (a.velocity.x < 0.0) a.velocity.x = 0.0;
    } else if (a.position.x > hi) {
      a.position.x = hi;
      if (a.velocity.x > 0.0) a.velocity.x = 0.0;
    }
    if (a.position.y < lo) {
      a.position.y = lo;
      if (a.velocity.y < 0.0) a.velocity.y = 0.0;
    } else if (a.position.y > hi) {
      a.position.y = hi;
      if (a.velocity.y > 0.0) a.velocity.y = 0.0;
    }

    if (!a.reached_goal &&
        distance(a.position, s.goals[i]) <= p.goal_tolerance)
      a.reached_goal = true;
  }

  state.t += 1;
  auto events = detect_collisions(state, s, overlap);
  for (auto& e : events) {
    e.step = exec_step;
    state.collision_counts[e.agent] += 1;
    if (e.kind == CollisionKind::agent_agent)
      state.collision_counts[e.partner] += 1;
  }
  return events;
}

bool is_success(const AgentState& agent, int collisions_for_agent) {
  return agent.reached_goal && collisions_for_agent == 0;
}

}  // namespace lae::sim
