#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "lae/cli/pipeline.hpp"
#include "lae/eval/report.hpp"

namespace {

using namespace lae;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return 2;
    case ErrorKind::MissingArtifact: return 3;
    case ErrorKind::PlacementFailure: return 4;
    case ErrorKind::ConvergenceFailure: return 5;
    case ErrorKind::FrozenHashMismatch: return 6;
    case ErrorKind::ChecksumMismatch: return 7;
    case ErrorKind::VersionMismatch: return 8;
    case ErrorKind::EmptyDataset: return 9;
    case ErrorKind::SingleClassDataset: return 10;
    case ErrorKind::InsufficientSeeds: return 11;
    case ErrorKind::IoError: return 12;
    default: return 20;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent activation editing lab: frozen navigation policy, "
               "unsafe-state classifier, latent editors and a paired "
               "deterministic evaluation harness"};
  app.require_subcommand(1);
  app.footer(lae::cli::config_key_reference());

  std::string config_path;
  std::string out_dir;
  int threads = -1;
  app.add_option("--config", config_path, "JSON config file (defaults apply)");
  app.add_option("--out", out_dir, "override out_dir");
  app.add_option("--threads", threads, "override worker thread count");

  auto* gen = app.add_subcommand("gen-scenarios",
                                 "generate scenario files (.scn + .json)");
  std::uint64_t gen_seed_start = 300000;
  int gen_count = 10;
  gen->add_option("--seed-start", gen_seed_start, "first seed");
  gen->add_option("--count", gen_count, "number of scenarios");

  auto* train_policy = app.add_subcommand(
      "train-policy", "behavior-clone the frozen base policy");
  auto* collect = app.add_subcommand(
      "collect", "roll out the frozen policy and build training datasets");
  auto* train_classifier = app.add_subcommand(
      "train-classifier", "train the safe/unsafe latent classifier");

  auto* train_editor =
      app.add_subcommand("train-editor", "train/build a latent editor");
  std::string editor_kind;
  train_editor->add_option("--kind", editor_kind,
                           "lcwm_gru | kd | sae | ae (default: config)");

  auto* evaluate = app.add_subcommand(
      "evaluate", "paired base-vs-edited campaign with t-test and report");
  auto* ablate = app.add_subcommand("ablate", "sweep one axis");
  std::string axis = "H";
  ablate->add_option("--axis", axis, "edit_site | H | m")->required();

  auto* replay =
      app.add_subcommand("replay", "replay one scenario to trajectory CSV");
  std::uint64_t replay_seed = 300000;
  bool replay_gated = false;
  replay->add_option("--seed", replay_seed, "scenario seed")->required();
  replay->add_flag("--gated", replay_gated, "run with the inference gate");

  auto* keys = app.add_subcommand("keys", "print the config key reference");

  CLI11_PARSE(app, argc, argv);

  try {
    lae::cli::Config cfg = lae::cli::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;

    if (gen->parsed()) {
      lae::cli::run_gen_scenarios(cfg, gen_seed_start, gen_count);
    } else if (train_policy->parsed()) {
      auto r = lae::cli::run_train_policy(cfg);
      std::printf("policy trained: %zu pairs, val mse %.6g\n", r.n_pairs,
                  r.val_mse);
    } else if (collect->parsed()) {
      lae::cli::run_collect(cfg);
      std::printf("collection done\n");
    } else if (train_classifier->parsed()) {
      auto m = lae::cli::run_train_classifier(cfg);
      std::printf(
          "classifier trained: overall %.4f, safe %.4f, unsafe recall %.4f\n",
          m.overall, m.safe_acc, m.unsafe_recall);
    } else if (train_editor->parsed()) {
      if (editor_kind.empty()) editor_kind = cfg.editor.kind;
      lae::cli::Config local = cfg;
      local.editor.kind = editor_kind;
      lae::cli::run_train_editor(local, editor_kind);
      std::printf("editor '%s' trained\n", editor_kind.c_str());
    } else if (evaluate->parsed()) {
      auto report = lae::cli::run_evaluate(cfg);
      std::printf("%s",
                  lae::eval::paired_summary(report, "base", "edited").c_str());
    } else if (ablate->parsed()) {
      lae::cli::run_ablate(cfg, axis);
      std::printf("ablation '%s' done\n", axis.c_str());
    } else if (replay->parsed()) {
      lae::cli::run_replay(cfg, replay_seed, replay_gated);
      std::printf("replay written\n");
    } else if (keys->parsed()) {
      std::printf("%s", lae::cli::config_key_reference());
    }
  } catch (const lae::Error& e) {
    // Machine-readable error line: "error: <Kind>: <message>".
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: Unexpected: %s\n", e.what());
    return 21;
  }
  return 0;
}
