#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/latent.hpp"
#include "lae/sim/world.hpp"

namespace lae::data {

// Per-step, per-agent record of the frozen policy's latents plus the
// episode's collision bookkeeping. Step-major layout:
// index(t, agent) = t * n_agents + agent.
struct TrajectoryLog {
  std::uint64_t scenario_seed = 0;
  int n_agents = 0;
  int steps = 0;  // T; step indices are contiguous 0..T-1

  std::vector<float> z1;       // T * n_agents * kLatentDim
  std::vector<float> z2;       // T * n_agents * kLatentDim
  std::vector<float> actions;  // T * n_agents * 2
  std::vector<float> positions;  // T * n_agents * 2, only when requested

  std::vector<sim::CollisionEvent> events;
  // Sorted, deduplicated collision step indices per agent; agent_agent
  // events appear in both participants' sets.
  std::vector<std::vector<int>> collision_steps;
  std::vector<std::uint8_t> reached_goal;  // per agent
  std::vector<std::uint8_t> success;       // per agent

  const float* z1_at(int t, int agent) const {
    return z1.data() +
           (static_cast<std::size_t>(t) * n_agents + agent) * kLatentDim;
  }
  const float* z2_at(int t, int agent) const {
    return z2.data() +
           (static_cast<std::size_t>(t) * n_agents + agent) * kLatentDim;
  }
  Latent z1_latent(int t, int agent) const {
    Latent out;
    const float* p = z1_at(t, agent);
    std::copy(p, p + kLatentDim, out.begin());
    return out;
  }
  Latent z2_latent(int t, int agent) const {
    Latent out;
    const float* p = z2_at(t, agent);
    std::copy(p, p + kLatentDim, out.begin());
    return out;
  }

  int total_events() const { return static_cast<int>(events.size()); }
  bool zero_collision() const { return events.empty(); }
  bool agent_collided(int agent) const {
    return !collision_steps[agent].empty();
  }

  std::vector<std::uint8_t> to_bytes() const;
  static TrajectoryLog from_bytes(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static TrajectoryLog load(const std::string& path);
  std::string to_csv() const;  // fixed column export for inspection
};

enum class LatentSource : std::uint8_t { z1 = 0, z2 = 1 };

inline const float* latent_at(const TrajectoryLog& log, LatentSource src,
                              int t, int agent) {
  return src == LatentSource::z1 ? log.z1_at(t, agent) : log.z2_at(t, agent);
}

}  // namespace lae::data
