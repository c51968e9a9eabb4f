#include "lae/eval/metrics.hpp"

namespace lae::eval {

void RunMetrics::add_episode(const data::TrajectoryLog& log) {
  const int events = log.total_events();
  per_scenario_collisions.push_back(events);
  total_collisions += events;
  if (events == 0) ++zero_collision_trajectories;
  for (int i = 0; i < log.n_agents; ++i) {
    success_count_ += log.success[i] ? 1 : 0;
    ++agent_count_;
  }
}

void RunMetrics::finalize() {
  avg_success_rate =
      agent_count_ ? static_cast<double>(success_count_) / agent_count_ : 0.0;
  // Hard invariants; a violation is a bookkeeping bug, not an input error.
  if (zero_collision_trajectories >
      static_cast<int>(per_scenario_collisions.size()))
    fail(ErrorKind::ConfigError, "zero-collision count exceeds scenario count");
  long sum = 0;
  for (int c : per_scenario_collisions) sum += c;
  if (sum != total_collisions)
    fail(ErrorKind::ConfigError, "per-scenario counts do not add up");
  if (avg_success_rate < 0.0 || avg_success_rate > 1.0)
    fail(ErrorKind::ConfigError, "success rate out of [0,1]");
}

PairedReport make_paired_report(RunMetrics base, RunMetrics edited, long flags,
                                long edits) {
  if (base.per_scenario_collisions.size() !=
      edited.per_scenario_collisions.size())
    fail(ErrorKind::DimensionMismatch,
         "paired runs must cover the same scenario set");
  PairedReport report;
  report.base = std::move(base);
  report.edited = std::move(edited);
  report.deltas.reserve(report.base.per_scenario_collisions.size());
  for (std::size_t i = 0; i < report.base.per_scenario_collisions.size(); ++i)
    report.deltas.push_back(
        static_cast<double>(report.base.per_scenario_collisions[i]) -
        static_cast<double>(report.edited.per_scenario_collisions[i]));
  report.ttest = paired_ttest(report.deltas);
  report.flags_raised = flags;
  report.edits_applied = edits;
  return report;
}

}  // namespace lae::eval
