#include "lae/data/labeling.hpp"

#include <algorithm>

namespace lae::data {

std::vector<std::uint8_t> label_steps(const std::vector<int>& collision_steps,
                                      int T, int H) {
  if (H < 0) fail(ErrorKind::ConfigError, "horizon H must be >= 0");
  std::vector<std::uint8_t> labels(T, 0);
  for (int t_c : collision_steps) {
    const int lo = std::max(0, t_c - H);
    const int hi = std::min(T - 1, t_c);
    for (int t = lo; t <= hi; ++t) labels[t] = 1;
  }
  return labels;
}

std::vector<std::vector<std::uint8_t>> label_time_to_collision(
    const TrajectoryLog& log, int H) {
  std::vector<std::vector<std::uint8_t>> out(log.n_agents);
  for (int a = 0; a < log.n_agents; ++a)
    out[a] = label_steps(log.collision_steps[a], log.steps, H);
  return out;
}

}  // namespace lae::data
