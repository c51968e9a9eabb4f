#pragma once

#include <optional>
#include <string>

#include "lae/cli/config.hpp"
#include "lae/data/datasets.hpp"
#include "lae/eval/metrics.hpp"
#include "lae/policy/bc.hpp"

namespace lae::cli {

// Stage output layout under cfg.out_dir. Each stage is a pure function of
// its input artifacts; re-running with the same config reproduces the same
// bytes.
struct StagePaths {
  explicit StagePaths(const std::string& root) : root(root) {}
  std::string root;

  std::string scenarios_dir() const { return root + "/scenarios"; }
  std::string policy_dir() const { return root + "/policy"; }
  std::string policy_prefix() const { return policy_dir() + "/policy"; }
  std::string collect_dir() const { return root + "/collect"; }
  std::string collected_path() const { return collect_dir() + "/collected.ds"; }
  std::string classifier_dir() const { return root + "/classifier"; }
  std::string classifier_prefix() const {
    return classifier_dir() + "/classifier";
  }
  std::string editor_dir(const std::string& kind) const {
    return root + "/editor-" + kind;
  }
  std::string editor_prefix(const std::string& kind) const {
    return editor_dir(kind) + "/" + kind;
  }
  std::string eval_dir() const { return root + "/eval"; }
  std::string ablate_dir(const std::string& axis) const {
    return root + "/ablate-" + axis;
  }
  std::string replay_dir() const { return root + "/replay"; }
};

void run_gen_scenarios(const Config& cfg, std::uint64_t seed_start, int count);
policy::BcResult run_train_policy(const Config& cfg);
void run_collect(const Config& cfg);
safety::ClassifierMetrics run_train_classifier(const Config& cfg);
void run_train_editor(const Config& cfg, const std::string& kind);
eval::PairedReport run_evaluate(const Config& cfg);
void run_ablate(const Config& cfg, const std::string& axis);
void run_replay(const Config& cfg, std::uint64_t seed, bool gated);

// Loaders with MissingArtifact errors that name the producing stage.
policy::LoadedPolicy require_policy(const Config& cfg);
data::CollectedDataset require_collected(const Config& cfg);

}  // namespace lae::cli
