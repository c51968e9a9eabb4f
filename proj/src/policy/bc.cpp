#include "lae/policy/bc.hpp"

#include <algorithm>
#include <numeric>

#include "lae/nn/adam.hpp"
#include "lae/parallel.hpp"
#include "lae/rng.hpp"
#include "lae/sim/world.hpp"

namespace lae::policy {

ExpertEpisodeStats run_expert_episode(const sim::Scenario& scenario,
                                      const ExpertGains& gains,
                                      std::vector<Observation>* obs_out,
                                      std::vector<Vec2>* act_out) {
  ExpertEpisodeStats stats;
  const int n = scenario.n_agents();
  sim::WorldState world = sim::initial_state(scenario);
  sim::OverlapTable overlap = sim::OverlapTable::make(scenario);
  std::vector<Vec2> actions(n);

  for (int t = 0; t < scenario.params.max_steps; ++t) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      Observation obs = observe(world, scenario, i);
      actions[i] = expert_action(obs, gains);
      if (obs_out) obs_out->push_back(obs);
      if (act_out) act_out->push_back(actions[i]);
      all_done = all_done && world.agents[i].reached_goal;
    }
    auto events = sim::step(world, scenario, actions, overlap);
    stats.events += static_cast<int>(events.size());
    if (all_done) break;
  }
  stats.steps = world.t;
  for (int i = 0; i < n; ++i) {
    if (world.agents[i].reached_goal) ++stats.goals_reached;
    if (sim::is_success(world.agents[i], world.collision_counts[i]))
      ++stats.successes;
  }
  return stats;
}

BcResult train_bc(Policy& net, const BcConfig& cfg, int threads) {
  using M = nn::Mat<float>;

  // Expert demonstrations, scenario-parallel with per-index slots.
  std::vector<std::vector<Observation>> obs_per(cfg.scenarios);
  std::vector<std::vector<Vec2>> act_per(cfg.scenarios);
  parallel_for(cfg.scenarios, threads, [&](int i) {
    sim::Scenario sc = sim::generate_scenario(cfg.seed_start + i,
                                              cfg.scenario_params);
    run_expert_episode(sc, cfg.gains, &obs_per[i], &act_per[i]);
  });

  std::vector<const Observation*> obs;
  std::vector<const Vec2*> act;
  for (int i = 0; i < cfg.scenarios; ++i) {
    for (std::size_t k = 0; k < obs_per[i].size(); k += cfg.subsample_stride) {
      obs.push_back(&obs_per[i][k]);
      act.push_back(&act_per[i][k]);
    }
  }
  if (obs.size() < cfg.min_pairs)
    fail(ErrorKind::EmptyDataset,
         "behavior cloning needs >= " + std::to_string(cfg.min_pairs) +
             " pairs, collected " + std::to_string(obs.size()));

  const std::size_t n_total = obs.size();
  M x(n_total, kObsDim), y(n_total, 2);
  for (std::size_t r = 0; r < n_total; ++r) {
    x.row(r) = net.obs_row(*obs[r]);
    y(r, 0) = static_cast<float>(act[r]->x);
    y(r, 1) = static_cast<float>(act[r]->y);
  }

  std::vector<std::size_t> order(n_total);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(cfg.shuffle_seed);
  shuffle_rng.shuffle(order);
  const std::size_t n_val =
      std::max<std::size_t>(1, static_cast<std::size_t>(n_total * cfg.val_frac));
  const std::size_t n_train = n_total - n_val;

  auto gather = [&](std::size_t begin, std::size_t count, const M& src,
                    int cols) {
    M out(count, cols);
    for (std::size_t r = 0; r < count; ++r)
      out.row(r) = src.row(order[begin + r]);
    return out;
  };
  M x_train = gather(0, n_train, x, kObsDim);
  M y_train = gather(0, n_train, y, 2);
  M x_val = gather(n_train, n_val, x, kObsDim);
  M y_val = gather(n_train, n_val, y, 2);

  auto params = net.params();
  nn::Adam<float> opt(cfg.lr);
  std::vector<std::size_t> idx(n_train);
  std::iota(idx.begin(), idx.end(), 0);

  BcResult result;
  result.n_pairs = n_total;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(idx);
    for (std::size_t start = 0; start < n_train;
         start += static_cast<std::size_t>(cfg.batch)) {
      std::size_t count =
          std::min<std::size_t>(cfg.batch, n_train - start);
      M xb(count, kObsDim), yb(count, 2);
      for (std::size_t r = 0; r < count; ++r) {
        xb.row(r) = x_train.row(idx[start + r]);
        yb.row(r) = y_train.row(idx[start + r]);
      }
      opt.zero_grads(params);
      auto fwd = net.forward(xb, true);
      M grad;
      nn::mse_loss<float>(fwd.action, yb, &grad);
      net.backward(grad);
      opt.step(params);
    }
    ++result.epochs_run;
  }

  // Scaled inputs are already in x_val; this path must match deployment, so
  // run the batched eval-mode forward.
  auto val_fwd = net.forward(x_val, false);
  result.val_mse =
      nn::mse_loss<float>(val_fwd.action, y_val, nullptr) / 2.0;

  if (result.val_mse > cfg.mse_threshold)
    fail(ErrorKind::ConvergenceFailure,
         "behavior cloning validation MSE " + std::to_string(result.val_mse) +
             " exceeds threshold " + std::to_string(cfg.mse_threshold));
  return result;
}

}  // namespace lae::policy
