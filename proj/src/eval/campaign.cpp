#include "lae/eval/campaign.hpp"

#include "lae/parallel.hpp"

namespace lae::eval {

std::vector<sim::Scenario> select_collision_configs(
    const SelectConfig& cfg, const sim::ScenarioParams& params,
    const policy::Policy& policy) {
  std::vector<sim::Scenario> selected;
  data::RolloutOptions opt;
  opt.record_latents = false;

  const int chunk = std::max(4 * cfg.threads, 16);
  int scanned = 0;
  while (static_cast<int>(selected.size()) < cfg.target) {
    if (scanned >= cfg.max_scan)
      fail(ErrorKind::InsufficientSeeds,
           "scanned " + std::to_string(scanned) + " seeds, found only " +
               std::to_string(selected.size()) + " collision-bearing of " +
               std::to_string(cfg.target));
    const int batch = std::min(chunk, cfg.max_scan - scanned);
    std::vector<sim::Scenario> scenarios(batch);
    std::vector<std::uint8_t> keep(batch, 0);
    parallel_for(batch, cfg.threads, [&](int i) {
      scenarios[i] =
          sim::generate_scenario(cfg.seed_start + scanned + i, params);
      auto result = data::rollout(scenarios[i], policy, nullptr, opt);
      keep[i] = result.log.total_events() > 0 ? 1 : 0;
    });
    for (int i = 0; i < batch; ++i) {
      if (keep[i] && static_cast<int>(selected.size()) < cfg.target)
        selected.push_back(std::move(scenarios[i]));
    }
    scanned += batch;
  }
  return selected;
}

PairedReport evaluate_paired(const std::vector<sim::Scenario>& scenarios,
                             const policy::Policy& policy,
                             const gate::GateBundle& bundle, int threads) {
  const int n = static_cast<int>(scenarios.size());
  std::vector<data::TrajectoryLog> base_logs(n), edited_logs(n);
  std::vector<gate::GateStats> stats(n);
  data::RolloutOptions opt;
  opt.record_latents = false;

  parallel_for(n, threads, [&](int i) {
    base_logs[i] = data::rollout(scenarios[i], policy, nullptr, opt).log;
    auto edited = data::rollout(scenarios[i], policy, &bundle, opt);
    edited_logs[i] = std::move(edited.log);
    stats[i] = edited.stats;
  });

  RunMetrics base, edited;
  long flags = 0, edits = 0;
  for (int i = 0; i < n; ++i) {
    base.add_episode(base_logs[i]);
    edited.add_episode(edited_logs[i]);
    flags += stats[i].flags_raised;
    edits += stats[i].edits_applied;
  }
  base.finalize();
  edited.finalize();
  return make_paired_report(std::move(base), std::move(edited), flags, edits);
}

RunMetrics evaluate_base(const std::vector<sim::Scenario>& scenarios,
                         const policy::Policy& policy, int threads) {
  const int n = static_cast<int>(scenarios.size());
  std::vector<data::TrajectoryLog> logs(n);
  data::RolloutOptions opt;
  opt.record_latents = false;
  parallel_for(n, threads, [&](int i) {
    logs[i] = data::rollout(scenarios[i], policy, nullptr, opt).log;
  });
  RunMetrics metrics;
  for (int i = 0; i < n; ++i) metrics.add_episode(logs[i]);
  metrics.finalize();
  return metrics;
}

}  // namespace lae::eval
