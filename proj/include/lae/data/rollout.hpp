#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/data/trajectory_log.hpp"
#include "lae/gate/gate.hpp"
#include "lae/policy/policy_net.hpp"
#include "lae/sim/scenario.hpp"

namespace lae::data {

struct RolloutOptions {
  bool record_latents = true;
  bool record_trace = false;
  bool record_positions = false;
  double action_noise_std = 0.0;  // seeded Gaussian on actions; 0 = off
  std::uint64_t noise_seed = 0;
  // Episodes stop once every agent has latched its goal (or at max_steps).
};

struct RolloutResult {
  TrajectoryLog log;
  std::vector<gate::GateTraceRow> trace;  // only when record_trace
  gate::GateStats stats;                  // summed over agents
};

// Steps the simulator with per-agent frozen-policy actions, optionally
// through the inference gate. Deterministic in (scenario, checkpoints, gate
// configuration). Agents act in index order within a step.
RolloutResult rollout(const sim::Scenario& scenario,
                      const policy::Policy& policy,
                      const gate::GateBundle* gate_bundle,
                      const RolloutOptions& opt = {});

std::string trace_csv(const std::vector<gate::GateTraceRow>& trace);

}  // namespace lae::data
