#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/data/trajectory_log.hpp"

namespace lae::data {

// ---- behavior-classifier dataset ----

struct LabeledSample {
  Latent z;
  std::uint8_t unsafe = 0;
  std::uint32_t traj = 0;
  std::uint16_t agent = 0;
  std::uint32_t t = 0;
};

struct ClassifierDataset {
  std::vector<LabeledSample> samples;

  std::size_t n_unsafe() const;
  std::size_t n_safe() const { return samples.size() - n_unsafe(); }
};

// Union over (trajectory, agent, step) of (Z1_t, Y_t), ordered by
// (traj, agent, t). Throws EmptyDataset on no logs.
ClassifierDataset build_classifier_dataset(
    const std::vector<TrajectoryLog>& logs, int H);

// ---- LCWM sequence dataset ----

struct LcwmSequence {
  std::vector<Latent> history;  // n latents, oldest first: Z_{t-n+1}..Z_t
  Latent target;                // Z_{t*}, t* = min(t+m, t_c)
  std::uint32_t traj = 0;
  std::uint16_t agent = 0;
  std::uint32_t t = 0;
  std::uint32_t t_c = 0;
};

struct LcwmDataset {
  int n = 3;
  int m = 10;
  int H = 250;
  LatentSource source = LatentSource::z1;
  std::vector<LcwmSequence> sequences;
};

// For every collision t_c of every agent with |C|>0, emits one sequence per
// t in [max(t_c-H,0)+n, t_c]: the n-step history ending at t paired with the
// clamped target Z_{min(t+m, t_c)}. The lower bound keeps the whole history
// span inside the pre-collision window. Throws EmptyDataset when no
// collision-bearing log exists.
LcwmDataset build_lcwm_dataset(const std::vector<TrajectoryLog>& logs, int n,
                               int m, int H,
                               LatentSource source = LatentSource::z1);

// ---- collected campaign container (relabel-friendly) ----

// What the collect stage persists instead of full logs: a thinned latent
// pool for classifier training (relabelable for any H <= h_max) and full
// pre-collision latent spans for editor training. The thinning rule is
// label-agnostic: keep every sample within h_max steps of one of its agent's
// collisions, plus every safe_keep_stride-th remaining sample.
struct CollisionWindow {
  std::uint32_t traj = 0;
  std::uint16_t agent = 0;
  std::uint32_t t_c = 0;
  std::uint32_t span_start = 0;  // max(t_c - h_max, 0)
  std::vector<float> z1;         // (t_c - span_start + 1) * kLatentDim
  std::vector<float> z2;

  const float* latent(LatentSource src, int t) const {
    const auto& buf = src == LatentSource::z1 ? z1 : z2;
    return buf.data() +
           static_cast<std::size_t>(t - span_start) * kLatentDim;
  }
  int span_len() const { return static_cast<int>(t_c - span_start) + 1; }
};

struct AgentCollisions {
  std::uint32_t traj = 0;
  std::uint16_t agent = 0;
  std::vector<int> steps;  // sorted t_c list
};

struct CollectedDataset {
  int h_max = 320;
  int safe_keep_stride = 16;
  std::uint32_t n_trajectories = 0;
  std::uint64_t total_steps = 0;       // agent-steps before thinning
  std::uint64_t total_events = 0;
  std::vector<LabeledSample> pool;     // labels filled for H = h_max
  std::vector<AgentCollisions> collisions;
  std::vector<CollisionWindow> windows;

  // Relabels the pool for the given horizon (H <= h_max).
  ClassifierDataset classifier_dataset(int H) const;
  // Sequences from the stored windows, trimmed to horizon H <= h_max.
  LcwmDataset lcwm_dataset(int n, int m, int H, LatentSource source) const;

  void append_log(const TrajectoryLog& log, std::uint32_t traj_index);

  std::uint64_t thin_counter_ = 0;  // build-time state, not serialized

  std::vector<std::uint8_t> to_bytes() const;
  static CollectedDataset from_bytes(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static CollectedDataset load(const std::string& path);
  std::string pool_csv(std::size_t max_rows) const;  // inspection export
};

// Shared sequence-emission rule so log-based and window-based construction
// stay identical.
void emit_sequences_for_collision(
    const float* span, int span_start, int t_c, int n, int m, int H,
    std::uint32_t traj, std::uint16_t agent, std::vector<LcwmSequence>& out);

}  // namespace lae::data
