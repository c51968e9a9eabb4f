#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lae/data/rollout.hpp"
#include "lae/eval/metrics.hpp"

namespace lae::eval {

struct SelectConfig {
  std::uint64_t seed_start = 300000;
  int max_scan = 20000;  // InsufficientSeeds beyond this many seeds
  int target = 200;      // collision-bearing scenarios to keep
  int threads = 1;
};

// Rolls the frozen base policy over seeds in ascending order and keeps
// scenarios with at least one collision until the target count is reached.
std::vector<sim::Scenario> select_collision_configs(
    const SelectConfig& cfg, const sim::ScenarioParams& params,
    const policy::Policy& policy);

// Two rollouts per scenario (base without the gate, edited with it) from
// bit-identical initial states; aggregation is in scenario order regardless
// of worker scheduling.
PairedReport evaluate_paired(const std::vector<sim::Scenario>& scenarios,
                             const policy::Policy& policy,
                             const gate::GateBundle& bundle, int threads);

// Base-only campaign metrics (used for expert-vs-clone comparisons).
RunMetrics evaluate_base(const std::vector<sim::Scenario>& scenarios,
                         const policy::Policy& policy, int threads);

}  // namespace lae::eval
