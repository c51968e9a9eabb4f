#pragma once

#include <cstdint>
#include <vector>

#include "lae/policy/expert.hpp"
#include "lae/policy/policy_net.hpp"
#include "lae/sim/scenario.hpp"

namespace lae::policy {

struct BcConfig {
  int scenarios = 60;
  std::uint64_t seed_start = 100000;
  int subsample_stride = 2;  // keep every k-th step of each episode
  double val_frac = 0.1;
  int epochs = 25;
  int batch = 256;
  double lr = 1e-3;
  double mse_threshold = 0.05;  // per-dim validation MSE gate, (m/s^2)^2
  std::uint64_t shuffle_seed = 12;
  std::size_t min_pairs = 50000;
  ExpertGains gains;
  sim::ScenarioParams scenario_params;
};

struct BcResult {
  double val_mse = 0.0;  // per-dim, held-out
  std::size_t n_pairs = 0;
  int epochs_run = 0;
};

struct ExpertEpisodeStats {
  int events = 0;
  int goals_reached = 0;
  int successes = 0;  // reached with zero collisions
  int steps = 0;
};

// Drives one episode with the potential-field controller. Optionally records
// the raw (observation, action) pairs it produced.
ExpertEpisodeStats run_expert_episode(
    const sim::Scenario& scenario, const ExpertGains& gains,
    std::vector<Observation>* obs_out = nullptr,
    std::vector<Vec2>* act_out = nullptr);

// Behavior cloning: expert rollouts over a seeded scenario batch, then
// mean-squared-error regression of the action head. The net is trained in
// place and left unfrozen; the caller freezes and checkpoints it.
// Throws ConvergenceFailure if the held-out MSE ends above mse_threshold and
// EmptyDataset if fewer than min_pairs pairs were collected.
BcResult train_bc(Policy& net, const BcConfig& cfg, int threads = 1);

}  // namespace lae::policy
