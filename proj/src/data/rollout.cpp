#include "lae/data/rollout.hpp"

#include <sstream>

#include "lae/rng.hpp"

namespace lae::data {

RolloutResult rollout(const sim::Scenario& scenario,
                      const policy::Policy& policy,
                      const gate::GateBundle* gate_bundle,
                      const RolloutOptions& opt) {
  const int n = scenario.n_agents();
  RolloutResult out;
  TrajectoryLog& log = out.log;
  log.scenario_seed = scenario.seed;
  log.n_agents = n;
  log.collision_steps.resize(n);

  sim::WorldState world = sim::initial_state(scenario);
  sim::OverlapTable overlap = sim::OverlapTable::make(scenario);
  std::vector<gate::GateState> gates(gate_bundle ? n : 0);
  Rng noise_rng(Rng::derive_seed(opt.noise_seed, scenario.seed));

  std::vector<Vec2> actions(n);
  for (int t = 0; t < scenario.params.max_steps; ++t) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      const policy::Observation obs = policy::observe(world, scenario, i);
      Latent z1, z2;
      if (gate_bundle) {
        auto r = gate::gated_step(policy, *gate_bundle->classifier,
                                  *gate_bundle->editor, gate_bundle->mask,
                                  gate_bundle->cfg, obs, gates[i]);
        actions[i] = r.action;
        z1 = r.z1;
        z2 = r.z2;
        if (opt.record_trace)
          out.trace.push_back({t, i, r.unsafe, r.buffer_len, r.edited});
      } else {
        auto r = policy.act(obs);
        actions[i] = r.action;
        z1 = r.z1;
        z2 = r.z2;
      }
      if (opt.action_noise_std > 0.0) {
        actions[i].x += opt.action_noise_std * noise_rng.normal();
        actions[i].y += opt.action_noise_std * noise_rng.normal();
      }
      if (opt.record_latents) {
        log.z1.insert(log.z1.end(), z1.begin(), z1.end());
        log.z2.insert(log.z2.end(), z2.begin(), z2.end());
        log.actions.push_back(static_cast<float>(actions[i].x));
        log.actions.push_back(static_cast<float>(actions[i].y));
      }
      if (opt.record_positions) {
        log.positions.push_back(
            static_cast<float>(world.agents[i].position.x));
        log.positions.push_back(
            static_cast<float>(world.agents[i].position.y));
      }
      all_done = all_done && world.agents[i].reached_goal;
    }

    auto events = sim::step(world, scenario, actions, overlap);
    for (const auto& e : events) {
      log.events.push_back(e);
      auto& mine = log.collision_steps[e.agent];
      if (mine.empty() || mine.back() != e.step) mine.push_back(e.step);
      if (e.kind == sim::CollisionKind::agent_agent) {
        auto& theirs = log.collision_steps[e.partner];
        if (theirs.empty() || theirs.back() != e.step)
          theirs.push_back(e.step);
      }
    }
    ++log.steps;
    if (all_done) break;
  }

  log.reached_goal.resize(n);
  log.success.resize(n);
  for (int i = 0; i < n; ++i) {
    log.reached_goal[i] = world.agents[i].reached_goal ? 1 : 0;
    log.success[i] =
        sim::is_success(world.agents[i], world.collision_counts[i]) ? 1 : 0;
  }
  if (gate_bundle)
    for (const auto& g : gates) {
      out.stats.flags_raised += g.stats.flags_raised;
      out.stats.edits_applied += g.stats.edits_applied;
    }
  return out;
}

std::string trace_csv(const std::vector<gate::GateTraceRow>& trace) {
  std::ostringstream os;
  os << "step,agent,flag,buffer_len,edited\n";
  for (const auto& r : trace)
    os << r.step << "," << r.agent << "," << static_cast<int>(r.unsafe) << ","
       << r.buffer_len << "," << static_cast<int>(r.edited) << "\n";
  return os.str();
}

}  // namespace lae::data
