#pragma once

#include <vector>

#include "lae/data/trajectory_log.hpp"
#include "lae/eval/ttest.hpp"

namespace lae::eval {

// The three headline metrics over a scenario set.
struct RunMetrics {
  long total_collisions = 0;            // sum of per-scenario event counts
  int zero_collision_trajectories = 0;  // episodes with no events at all
  double avg_success_rate = 0.0;        // pooled over (scenario, agent)
  std::vector<int> per_scenario_collisions;

  void add_episode(const data::TrajectoryLog& log);
  void finalize();  // computes avg_success_rate from accumulators

  long success_count_ = 0;  // accumulators
  long agent_count_ = 0;
};

struct PairedReport {
  RunMetrics base;
  RunMetrics edited;
  std::vector<double> deltas;  // per-scenario base - edited collision counts
  TTestResult ttest;
  long edits_applied = 0;
  long flags_raised = 0;
};

// Builds the per-scenario deltas (base - edited) and attaches the t-test.
PairedReport make_paired_report(RunMetrics base, RunMetrics edited,
                                long flags, long edits);

}  // namespace lae::eval
