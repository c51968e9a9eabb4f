#include "lae/cli/pipeline.hpp"

#include <filesystem>

#include "lae/binio.hpp"
#include "lae/cli/manifest.hpp"
#include "lae/data/rollout.hpp"
#include "lae/edit/editor_io.hpp"
#include "lae/eval/campaign.hpp"
#include "lae/eval/report.hpp"
#include "lae/parallel.hpp"

namespace lae::cli {

namespace fs = std::filesystem;

namespace {

bool file_exists(const std::string& path) { return fs::exists(path); }

// Shared by the editor stage and the ablation sweeps: trains an editor of
// the given kind in memory.
std::unique_ptr<edit::Editor> train_editor_in_memory(
    const Config& cfg, const std::string& kind,
    const data::CollectedDataset& collected, edit::EditSite site, int H,
    int m) {
  const data::LatentSource source = edit::latent_source_for(site);
  if (kind == "lcwm_gru") {
    edit::LcwmConfig lc = cfg.editor.lcwm;
    lc.m = m;
    auto ds = collected.lcwm_dataset(lc.n, lc.m, H, source);
    return edit::train_lcwm(ds, lc);
  }
  if (kind == "kd") {
    edit::KdEditorConfig kc = cfg.editor.kd;
    kc.H = H;
    kc.m = m;
    auto editor = edit::build_kd_editor(collected, kc, source);
    editor->trained_source = source;
    return editor;
  }
  if (kind == "sae" || kind == "ae") {
    if (source != data::LatentSource::z1)
      fail(ErrorKind::ConfigError,
           kind + " editor supports only Z1 edit sites (pool stores Z1)");
    auto labeled = collected.classifier_dataset(H);
    std::vector<Latent> unsafe_latents, safe_latents, all_latents;
    for (const auto& s : labeled.samples) {
      all_latents.push_back(s.z);
      if (s.unsafe)
        unsafe_latents.push_back(s.z);
      else
        safe_latents.push_back(s.z);
    }
    if (kind == "sae") {
      auto editor = edit::train_sae(unsafe_latents, safe_latents,
                                    cfg.editor.sae);
      editor->trained_source = source;
      return editor;
    }
    auto editor = edit::train_ae(all_latents, cfg.editor.ae);
    editor->trained_source = source;
    return editor;
  }
  fail(ErrorKind::ConfigError, "unknown editor kind: " + kind);
}

struct LoadedStack {
  policy::LoadedPolicy policy;
  safety::Classifier classifier;
  edit::LoadedEditor editor;
};

LoadedStack require_stack(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  auto pol = require_policy(cfg);
  if (!file_exists(paths.classifier_prefix() + ".meta.json"))
    fail(ErrorKind::MissingArtifact,
         "no classifier checkpoint; run train-classifier first");
  auto cls = safety::Classifier::load(paths.classifier_prefix());
  const std::string kind = cfg.editor.kind;
  if (!file_exists(paths.editor_prefix(kind) + ".meta.json"))
    fail(ErrorKind::MissingArtifact,
         "no editor checkpoint for kind '" + kind +
             "'; run train-editor first");
  auto ed = edit::load_editor(paths.editor_prefix(kind));
  return {std::move(pol), std::move(cls), std::move(ed)};
}

}  // namespace

policy::LoadedPolicy require_policy(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  if (!file_exists(paths.policy_prefix() + ".meta.json"))
    fail(ErrorKind::MissingArtifact,
         "no policy checkpoint; run train-policy first");
  return policy::load_policy(paths.policy_prefix());
}

data::CollectedDataset require_collected(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  if (!file_exists(paths.collected_path()))
    fail(ErrorKind::MissingArtifact,
         "no collected dataset; run collect first");
  return data::CollectedDataset::load(paths.collected_path());
}

void run_gen_scenarios(const Config& cfg, std::uint64_t seed_start,
                       int count) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.scenarios_dir());
  std::vector<std::string> outputs;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = seed_start + i;
    auto scenario = sim::generate_scenario(seed, cfg.sim);
    const std::string stem =
        paths.scenarios_dir() + "/scenario_" + std::to_string(seed);
    scenario.save(stem + ".scn");
    write_file_text(stem + ".json", scenario.to_json());
    outputs.push_back(stem + ".scn");
    outputs.push_back(stem + ".json");
  }
  write_manifest(paths.scenarios_dir(), "gen-scenarios", cfg, {}, outputs);
}

policy::BcResult run_train_policy(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.policy_dir());

  policy::PolicyDims dims{cfg.policy.embed, cfg.policy.enc_hidden,
                          cfg.policy.down_hidden};
  policy::Policy net(dims, cfg.sim.a_max, cfg.policy.init_seed);

  policy::BcConfig bc;
  bc.scenarios = cfg.policy.bc_scenarios;
  bc.seed_start = cfg.policy.bc_seed_start;
  bc.subsample_stride = cfg.policy.bc_subsample_stride;
  bc.val_frac = cfg.policy.bc_val_frac;
  bc.epochs = cfg.policy.bc_epochs;
  bc.batch = cfg.policy.bc_batch;
  bc.lr = cfg.policy.bc_lr;
  bc.mse_threshold = cfg.policy.bc_mse_threshold;
  bc.shuffle_seed = cfg.policy.bc_shuffle_seed;
  bc.gains = cfg.expert;
  bc.scenario_params = cfg.sim;
  auto result = policy::train_bc(net, bc, cfg.resolved_threads());

  net.freeze();
  policy::PolicyMeta meta;
  meta.dims = dims;
  meta.a_max = cfg.sim.a_max;
  meta.bc_val_mse = result.val_mse;
  meta.bc_seed = cfg.policy.bc_seed_start;
  policy::save_policy(net, meta, paths.policy_prefix());
  write_manifest(paths.policy_dir(), "train-policy", cfg, {},
                 {paths.policy_prefix() + ".ckpt",
                  paths.policy_prefix() + ".meta.json"});
  return result;
}

void run_collect(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.collect_dir());
  auto loaded = require_policy(cfg);

  data::CollectedDataset collected;
  collected.h_max = cfg.collect.h_max;
  collected.safe_keep_stride = cfg.collect.safe_keep_stride;

  data::RolloutOptions opt;
  opt.action_noise_std = cfg.action_noise_std;
  opt.noise_seed = cfg.seed;

  const int threads = cfg.resolved_threads();
  const int batch = std::max(8 * threads, 16);
  std::vector<data::TrajectoryLog> logs(batch);
  for (int start = 0; start < cfg.collect.scenarios; start += batch) {
    const int count = std::min(batch, cfg.collect.scenarios - start);
    parallel_for(count, threads, [&](int i) {
      auto scenario = sim::generate_scenario(
          cfg.collect.seed_start + start + i, cfg.sim);
      logs[i] = data::rollout(scenario, loaded.net, nullptr, opt).log;
    });
    for (int i = 0; i < count; ++i) {
      collected.append_log(logs[i], static_cast<std::uint32_t>(start + i));
      logs[i] = data::TrajectoryLog{};
    }
  }
  collected.save(paths.collected_path());
  write_file_text(paths.collect_dir() + "/pool_sample.csv",
                  collected.pool_csv(2000));
  policy::assert_policy_frozen(paths.policy_prefix(), loaded.meta);
  write_manifest(
      paths.collect_dir(), "collect", cfg,
      {hash_entry("policy", paths.policy_prefix() + ".ckpt")},
      {paths.collected_path(), paths.collect_dir() + "/pool_sample.csv"});
}

safety::ClassifierMetrics run_train_classifier(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.classifier_dir());
  auto collected = require_collected(cfg);
  auto dataset = collected.classifier_dataset(cfg.classifier.H);
  auto model = safety::train_classifier(dataset, cfg.classifier);
  model.save(paths.classifier_prefix());
  write_manifest(paths.classifier_dir(), "train-classifier", cfg,
                 {hash_entry("collected", paths.collected_path())},
                 {paths.classifier_prefix() + ".ckpt",
                  paths.classifier_prefix() + ".meta.json"});
  return model.metrics;
}

void run_train_editor(const Config& cfg, const std::string& kind) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.editor_dir(kind));
  auto collected = require_collected(cfg);
  auto editor =
      train_editor_in_memory(cfg, kind, collected, cfg.edit_site(),
                             cfg.classifier.H, cfg.editor.lcwm.m);
  edit::save_editor(*editor, paths.editor_prefix(kind));
  write_manifest(paths.editor_dir(kind), "train-editor", cfg,
                 {hash_entry("collected", paths.collected_path())},
                 {paths.editor_prefix(kind) + ".ckpt",
                  paths.editor_prefix(kind) + ".meta.json"});
}

eval::PairedReport run_evaluate(const Config& cfg) {
  StagePaths paths(cfg.out_dir);
  auto stack = require_stack(cfg);
  const edit::EditSite site = cfg.edit_site();
  if (stack.editor.editor->trained_source != edit::latent_source_for(site))
    fail(ErrorKind::ConfigError,
         "editor was trained on a different latent stream than the edit "
         "site targets; retrain with the matching gate.edit_site");

  eval::SelectConfig sel;
  sel.seed_start = cfg.eval.seed_start;
  sel.max_scan = cfg.eval.max_seed_scan;
  sel.target = cfg.eval.campaign_size;
  sel.threads = cfg.resolved_threads();
  auto scenarios = eval::select_collision_configs(sel, cfg.sim, stack.policy.net);

  gate::GateBundle bundle;
  bundle.classifier = &stack.classifier;
  bundle.editor = stack.editor.editor.get();
  bundle.mask = edit::EditMask::make(site);
  bundle.cfg.n = stack.editor.editor->history_len();
  bundle.cfg.slide = cfg.gate.slide;
  bundle.cfg.site = site;

  auto report = eval::evaluate_paired(scenarios, stack.policy.net, bundle,
                                      cfg.resolved_threads());
  eval::emit_paired_report(report, paths.eval_dir(), "base",
                           cfg.editor.kind + "+" + cfg.gate.edit_site);

  // Checkpoints must be byte-stable across the whole campaign.
  policy::assert_policy_frozen(paths.policy_prefix(), stack.policy.meta);
  safety::Classifier::assert_frozen(paths.classifier_prefix(),
                                    stack.classifier.freeze_hash);
  edit::assert_editor_frozen(paths.editor_prefix(cfg.editor.kind),
                             stack.editor.freeze_hash);

  write_manifest(
      paths.eval_dir(), "evaluate", cfg,
      {hash_entry("policy", paths.policy_prefix() + ".ckpt"),
       hash_entry("classifier", paths.classifier_prefix() + ".ckpt"),
       hash_entry("editor", paths.editor_prefix(cfg.editor.kind) + ".ckpt")},
      {paths.eval_dir() + "/report.csv", paths.eval_dir() + "/deltas.csv",
       paths.eval_dir() + "/summary.txt"});
  return report;
}

void run_ablate(const Config& cfg, const std::string& axis) {
  StagePaths paths(cfg.out_dir);
  const std::string dir = paths.ablate_dir(axis);
  fs::create_directories(dir);
  auto pol = require_policy(cfg);
  auto collected = require_collected(cfg);

  eval::SelectConfig sel;
  sel.seed_start = cfg.eval.seed_start;
  sel.max_scan = cfg.eval.max_seed_scan;
  sel.target = cfg.eval.campaign_size;
  sel.threads = cfg.resolved_threads();
  auto scenarios = eval::select_collision_configs(sel, cfg.sim, pol.net);

  auto evaluate_with = [&](const safety::Classifier& cls,
                           const edit::Editor& editor, edit::EditSite site) {
    gate::GateBundle bundle;
    bundle.classifier = &cls;
    bundle.editor = &editor;
    bundle.mask = edit::EditMask::make(site);
    bundle.cfg.n = editor.history_len();
    bundle.cfg.slide = cfg.gate.slide;
    bundle.cfg.site = site;
    return eval::evaluate_paired(scenarios, pol.net, bundle,
                                 cfg.resolved_threads());
  };

  std::vector<eval::ReportRow> rows;
  std::vector<double> axis_values;

  {
    eval::RunMetrics base =
        eval::evaluate_base(scenarios, pol.net, cfg.resolved_threads());
    rows.push_back({"base", std::move(base)});
  }

  if (axis == "edit_site") {
    auto cls = safety::Classifier::load(paths.classifier_prefix());
    auto z1_editor = train_editor_in_memory(
        cfg, cfg.editor.kind, collected, edit::EditSite::Z1_Partial,
        cfg.classifier.H, cfg.editor.lcwm.m);
    auto z2_editor = train_editor_in_memory(
        cfg, cfg.editor.kind, collected, edit::EditSite::Z2_All,
        cfg.classifier.H, cfg.editor.lcwm.m);
    for (auto site : {edit::EditSite::Z1_All, edit::EditSite::Z1_Partial,
                      edit::EditSite::Z2_All}) {
      const edit::Editor& editor =
          site == edit::EditSite::Z2_All ? *z2_editor : *z1_editor;
      auto report = evaluate_with(cls, editor, site);
      rows.push_back({edit::edit_site_name(site), std::move(report.edited)});
    }
  } else if (axis == "H") {
    for (int H : cfg.ablate.h_grid) {
      Config local = cfg;
      local.classifier.H = H;
      auto dataset = collected.classifier_dataset(H);
      auto cls = safety::train_classifier(dataset, local.classifier);
      auto editor = train_editor_in_memory(local, cfg.editor.kind, collected,
                                           cfg.edit_site(), H,
                                           cfg.editor.lcwm.m);
      auto report = evaluate_with(cls, *editor, cfg.edit_site());
      rows.push_back({"H=" + std::to_string(H), std::move(report.edited)});
      axis_values.push_back(H);
    }
  } else if (axis == "m") {
    auto cls = safety::Classifier::load(paths.classifier_prefix());
    for (int m : cfg.ablate.m_grid) {
      auto editor = train_editor_in_memory(cfg, cfg.editor.kind, collected,
                                           cfg.edit_site(), cfg.classifier.H,
                                           m);
      auto report = evaluate_with(cls, *editor, cfg.edit_site());
      rows.push_back({"m=" + std::to_string(m), std::move(report.edited)});
      axis_values.push_back(m);
    }
  } else {
    fail(ErrorKind::ConfigError,
         "unknown ablation axis: " + axis + " (edit_site | H | m)");
  }

  // The base row has no axis value; emit the sweep plots over the swept rows
  // only when every row has one.
  std::vector<eval::ReportRow> table = rows;
  std::vector<double> plot_axis;
  if (!axis_values.empty()) {
    plot_axis = axis_values;
    table.erase(table.begin());  // line plots over swept values only
    eval::emit_comparison(table, dir, axis, plot_axis);
    write_file_text(dir + "/table.csv", eval::metrics_csv(rows));
  } else {
    eval::emit_comparison(rows, dir, axis, {});
  }
  write_manifest(dir, "ablate-" + axis, cfg,
                 {hash_entry("policy", paths.policy_prefix() + ".ckpt"),
                  hash_entry("collected", paths.collected_path())},
                 {dir + "/table.csv"});
}

void run_replay(const Config& cfg, std::uint64_t seed, bool gated) {
  StagePaths paths(cfg.out_dir);
  fs::create_directories(paths.replay_dir());
  auto scenario = sim::generate_scenario(seed, cfg.sim);

  data::RolloutOptions opt;
  opt.record_positions = true;
  opt.record_trace = gated;
  opt.action_noise_std = cfg.action_noise_std;
  opt.noise_seed = cfg.seed;

  data::RolloutResult result;
  if (gated) {
    auto stack = require_stack(cfg);
    gate::GateBundle bundle;
    bundle.classifier = &stack.classifier;
    bundle.editor = stack.editor.editor.get();
    bundle.mask = edit::EditMask::make(cfg.edit_site());
    bundle.cfg.n = stack.editor.editor->history_len();
    bundle.cfg.slide = cfg.gate.slide;
    bundle.cfg.site = cfg.edit_site();
    result = data::rollout(scenario, stack.policy.net, &bundle, opt);
  } else {
    auto pol = require_policy(cfg);
    result = data::rollout(scenario, pol.net, nullptr, opt);
  }

  const std::string tag =
      std::to_string(seed) + (gated ? "_gated" : "_base");
  std::string csv = "step,agent,x,y,ax,ay\n";
  {
    std::ostringstream os;
    os.precision(9);
    const auto& log = result.log;
    for (int t = 0; t < log.steps; ++t)
      for (int a = 0; a < log.n_agents; ++a) {
        const std::size_t idx =
            (static_cast<std::size_t>(t) * log.n_agents + a) * 2;
        os << t << "," << a << "," << log.positions[idx] << ","
           << log.positions[idx + 1] << "," << log.actions[idx] << ","
           << log.actions[idx + 1] << "\n";
      }
    csv += os.str();
  }
  const std::string traj_path =
      paths.replay_dir() + "/trajectory_" + tag + ".csv";
  write_file_text(traj_path, csv);
  std::vector<std::string> outputs{traj_path};
  if (gated) {
    const std::string trace_path =
        paths.replay_dir() + "/trace_" + tag + ".csv";
    write_file_text(trace_path, data::trace_csv(result.trace));
    outputs.push_back(trace_path);
  }
  write_manifest(paths.replay_dir(), "replay", cfg, {}, outputs);
}

}  // namespace lae::cli
