#include "lae/policy/observation.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace lae::policy {

double sdf_at(const sim::Scenario& s, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : s.obstacles)
    best = std::min(best, distance(p, c) - s.params.obstacle_radius);
  return std::clamp(best, -kSdfClamp, kSdfClamp);
}

Observation observe(const sim::WorldState& world, const sim::Scenario& s,
                    int agent) {
  Observation obs;
  const auto& self = world.agents[agent];

  const Vec2 to_goal = s.goals[agent] - self.position;
  obs.self_part = {to_goal.x, to_goal.y, self.velocity.x, self.velocity.y,
                   0.0, 0.0};

  // Nearest two others, sorted by (distance, index) for determinism.
  std::vector<std::pair<double, int>> others;
  others.reserve(world.agents.size());
  for (int j = 0; j < static_cast<int>(world.agents.size()); ++j) {
    if (j == agent) continue;
    others.emplace_back(distance(world.agents[j].position, self.position), j);
  }
  std::sort(others.begin(), others.end());
  const double far = s.params.arena_side;
  for (int slot = 0; slot < kNeighborCount; ++slot) {
    double* f = obs.neigh_part.data() + slot * kNeighFeat;
    if (slot < static_cast<int>(others.size())) {
      const auto& other = world.agents[others[slot].second];
      f[0] = other.position.x - self.position.x;
      f[1] = other.position.y - self.position.y;
      f[2] = other.velocity.x - self.velocity.x;
      f[3] = other.velocity.y - self.velocity.y;
    } else {
      f[0] = far;
      f[1] = far;
      f[2] = 0.0;
      f[3] = 0.0;
    }
  }

  int k = 0;
  for (int iy = -1; iy <= 1; ++iy)
    for (int ix = -1; ix <= 1; ++ix)
      obs.obst_part[k++] = sdf_at(s, Vec2{self.position.x + ix * kSdfHalfExtent,
                                          self.position.y + iy * kSdfHalfExtent});
  return obs;
}

}  // namespace lae::policy
