#include "lae/cli/config.hpp"

#include <sstream>

#include "json.hpp"
#include "lae/binio.hpp"
#include "lae/parallel.hpp"
#include "lae/sha256.hpp"

namespace lae::cli {

using nlohmann::json;

int Config::resolved_threads() const { return resolve_threads(threads); }

namespace {

template <class T>
void take(json& obj, const std::string& path, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::ConfigError, "bad value for " + path + key);
  }
  obj.erase(it);
}

json take_obj(json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return json::object();
  if (!it->is_object())
    fail(ErrorKind::ConfigError, std::string("expected object for ") + key);
  json sub = std::move(*it);
  obj.erase(it);
  return sub;
}

void finish(const json& obj, const std::string& path) {
  if (obj.empty()) return;
  std::string keys;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!keys.empty()) keys += ", ";
    keys += path + it.key();
  }
  fail(ErrorKind::ConfigError, "unknown config key(s): " + keys);
}

}  // namespace

Config config_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("config is not valid JSON: ") +
                                     e.what());
  }
  if (!root.is_object())
    fail(ErrorKind::ConfigError, "config root must be a JSON object");

  Config c;
  take(root, "", "seed", c.seed);
  take(root, "", "threads", c.threads);
  take(root, "", "out_dir", c.out_dir);

  json sim = take_obj(root, "sim");
  take(sim, "sim.", "arena_side", c.sim.arena_side);
  take(sim, "sim.", "n_agents", c.sim.n_agents);
  take(sim, "sim.", "obstacle_density", c.sim.obstacle_density);
  take(sim, "sim.", "obstacle_radius", c.sim.obstacle_radius);
  take(sim, "sim.", "agent_radius", c.sim.agent_radius);
  take(sim, "sim.", "max_steps", c.sim.max_steps);
  take(sim, "sim.", "dt", c.sim.dt);
  take(sim, "sim.", "v_max", c.sim.v_max);
  take(sim, "sim.", "a_max", c.sim.a_max);
  take(sim, "sim.", "goal_tolerance", c.sim.goal_tolerance);
  take(sim, "sim.", "action_noise_std", c.action_noise_std);
  finish(sim, "sim.");

  json expert = take_obj(root, "expert");
  take(expert, "expert.", "k_goal", c.expert.k_goal);
  take(expert, "expert.", "k_damp", c.expert.k_damp);
  take(expert, "expert.", "k_neigh", c.expert.k_neigh);
  take(expert, "expert.", "neigh_range", c.expert.neigh_range);
  take(expert, "expert.", "k_obst", c.expert.k_obst);
  finish(expert, "expert.");
  c.expert.a_max = c.sim.a_max;

  json pol = take_obj(root, "policy");
  take(pol, "policy.", "embed", c.policy.embed);
  take(pol, "policy.", "enc_hidden", c.policy.enc_hidden);
  take(pol, "policy.", "down_hidden", c.policy.down_hidden);
  take(pol, "policy.", "init_seed", c.policy.init_seed);
  take(pol, "policy.", "bc_scenarios", c.policy.bc_scenarios);
  take(pol, "policy.", "bc_seed_start", c.policy.bc_seed_start);
  take(pol, "policy.", "bc_subsample_stride", c.policy.bc_subsample_stride);
  take(pol, "policy.", "bc_epochs", c.policy.bc_epochs);
  take(pol, "policy.", "bc_batch", c.policy.bc_batch);
  take(pol, "policy.", "bc_lr", c.policy.bc_lr);
  take(pol, "policy.", "bc_val_frac", c.policy.bc_val_frac);
  take(pol, "policy.", "bc_mse_threshold", c.policy.bc_mse_threshold);
  take(pol, "policy.", "bc_shuffle_seed", c.policy.bc_shuffle_seed);
  finish(pol, "policy.");

  json col = take_obj(root, "collect");
  take(col, "collect.", "scenarios", c.collect.scenarios);
  take(col, "collect.", "seed_start", c.collect.seed_start);
  take(col, "collect.", "h_max", c.collect.h_max);
  take(col, "collect.", "safe_keep_stride", c.collect.safe_keep_stride);
  finish(col, "collect.");

  json cls = take_obj(root, "classifier");
  take(cls, "classifier.", "hidden", c.classifier.hidden);
  take(cls, "classifier.", "dropout", c.classifier.dropout);
  take(cls, "classifier.", "H", c.classifier.H);
  take(cls, "classifier.", "theta_c", c.classifier.theta_c);
  take(cls, "classifier.", "epochs", c.classifier.epochs);
  take(cls, "classifier.", "batch", c.classifier.batch);
  take(cls, "classifier.", "lr", c.classifier.lr);
  take(cls, "classifier.", "val_frac", c.classifier.val_frac);
  take(cls, "classifier.", "max_samples", c.classifier.max_samples);
  take(cls, "classifier.", "accuracy_floor", c.classifier.accuracy_floor);
  take(cls, "classifier.", "unsafe_weight_scale",
       c.classifier.unsafe_weight_scale);
  take(cls, "classifier.", "init_seed", c.classifier.init_seed);
  take(cls, "classifier.", "shuffle_seed", c.classifier.shuffle_seed);
  finish(cls, "classifier.");

  json ed = take_obj(root, "editor");
  take(ed, "editor.", "kind", c.editor.kind);
  json lcwm = take_obj(ed, "lcwm");
  take(lcwm, "editor.lcwm.", "n", c.editor.lcwm.n);
  take(lcwm, "editor.lcwm.", "m", c.editor.lcwm.m);
  take(lcwm, "editor.lcwm.", "hidden", c.editor.lcwm.hidden);
  take(lcwm, "editor.lcwm.", "epochs", c.editor.lcwm.epochs);
  take(lcwm, "editor.lcwm.", "batch", c.editor.lcwm.batch);
  take(lcwm, "editor.lcwm.", "lr", c.editor.lcwm.lr);
  take(lcwm, "editor.lcwm.", "val_frac", c.editor.lcwm.val_frac);
  take(lcwm, "editor.lcwm.", "max_sequences", c.editor.lcwm.max_sequences);
  take(lcwm, "editor.lcwm.", "init_seed", c.editor.lcwm.init_seed);
  take(lcwm, "editor.lcwm.", "shuffle_seed", c.editor.lcwm.shuffle_seed);
  finish(lcwm, "editor.lcwm.");
  json kd = take_obj(ed, "kd");
  take(kd, "editor.kd.", "bucket_width", c.editor.kd.bucket_width);
  take(kd, "editor.kd.", "max_points", c.editor.kd.max_points);
  finish(kd, "editor.kd.");
  json sae = take_obj(ed, "sae");
  take(sae, "editor.sae.", "dict", c.editor.sae.dict);
  take(sae, "editor.sae.", "l1", c.editor.sae.l1);
  take(sae, "editor.sae.", "top_k", c.editor.sae.top_k);
  take(sae, "editor.sae.", "gamma", c.editor.sae.gamma);
  take(sae, "editor.sae.", "epochs", c.editor.sae.epochs);
  take(sae, "editor.sae.", "batch", c.editor.sae.batch);
  take(sae, "editor.sae.", "lr", c.editor.sae.lr);
  take(sae, "editor.sae.", "max_samples", c.editor.sae.max_samples);
  take(sae, "editor.sae.", "init_seed", c.editor.sae.init_seed);
  take(sae, "editor.sae.", "shuffle_seed", c.editor.sae.shuffle_seed);
  finish(sae, "editor.sae.");
  json ae = take_obj(ed, "ae");
  take(ae, "editor.ae.", "bottleneck", c.editor.ae.bottleneck);
  take(ae, "editor.ae.", "epochs", c.editor.ae.epochs);
  take(ae, "editor.ae.", "batch", c.editor.ae.batch);
  take(ae, "editor.ae.", "lr", c.editor.ae.lr);
  take(ae, "editor.ae.", "max_samples", c.editor.ae.max_samples);
  take(ae, "editor.ae.", "init_seed", c.editor.ae.init_seed);
  take(ae, "editor.ae.", "shuffle_seed", c.editor.ae.shuffle_seed);
  finish(ae, "editor.ae.");
  finish(ed, "editor.");

  json gate = take_obj(root, "gate");
  take(gate, "gate.", "edit_site", c.gate.edit_site);
  take(gate, "gate.", "slide", c.gate.slide);
  finish(gate, "gate.");

  json ev = take_obj(root, "eval");
  take(ev, "eval.", "campaign_size", c.eval.campaign_size);
  take(ev, "eval.", "seed_start", c.eval.seed_start);
  take(ev, "eval.", "max_seed_scan", c.eval.max_seed_scan);
  finish(ev, "eval.");

  json ab = take_obj(root, "ablate");
  take(ab, "ablate.", "h_grid", c.ablate.h_grid);
  take(ab, "ablate.", "m_grid", c.ablate.m_grid);
  finish(ab, "ablate.");

  finish(root, "");

  // Cross-field validation that would otherwise surface deep in a stage.
  edit::edit_site_from_name(c.gate.edit_site);
  if (c.editor.kind != "lcwm_gru" && c.editor.kind != "kd" &&
      c.editor.kind != "sae" && c.editor.kind != "ae")
    fail(ErrorKind::ConfigError, "unknown editor kind: " + c.editor.kind);
  if (c.classifier.H > c.collect.h_max)
    fail(ErrorKind::ConfigError, "classifier.H must be <= collect.h_max");
  c.editor.kd.H = c.classifier.H;
  c.editor.kd.m = c.editor.lcwm.m;
  return c;
}

Config load_config(const std::string& path) {
  if (path.empty()) return config_from_json_text("{}");
  return config_from_json_text(read_file_text(path));
}

std::string config_to_json_text(const Config& c) {
  json j;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out_dir"] = c.out_dir;
  j["sim"] = {{"arena_side", c.sim.arena_side},
              {"n_agents", c.sim.n_agents},
              {"obstacle_density", c.sim.obstacle_density},
              {"obstacle_radius", c.sim.obstacle_radius},
              {"agent_radius", c.sim.agent_radius},
              {"max_steps", c.sim.max_steps},
              {"dt", c.sim.dt},
              {"v_max", c.sim.v_max},
              {"a_max", c.sim.a_max},
              {"goal_tolerance", c.sim.goal_tolerance},
              {"action_noise_std", c.action_noise_std}};
  j["expert"] = {{"k_goal", c.expert.k_goal},
                 {"k_damp", c.expert.k_damp},
                 {"k_neigh", c.expert.k_neigh},
                 {"neigh_range", c.expert.neigh_range},
                 {"k_obst", c.expert.k_obst}};
  j["policy"] = {{"embed", c.policy.embed},
                 {"enc_hidden", c.policy.enc_hidden},
                 {"down_hidden", c.policy.down_hidden},
                 {"init_seed", c.policy.init_seed},
                 {"bc_scenarios", c.policy.bc_scenarios},
                 {"bc_seed_start", c.policy.bc_seed_start},
                 {"bc_subsample_stride", c.policy.bc_subsample_stride},
                 {"bc_epochs", c.policy.bc_epochs},
                 {"bc_batch", c.policy.bc_batch},
                 {"bc_lr", c.policy.bc_lr},
                 {"bc_val_frac", c.policy.bc_val_frac},
                 {"bc_mse_threshold", c.policy.bc_mse_threshold},
                 {"bc_shuffle_seed", c.policy.bc_shuffle_seed}};
  j["collect"] = {{"scenarios", c.collect.scenarios},
                  {"seed_start", c.collect.seed_start},
                  {"h_max", c.collect.h_max},
                  {"safe_keep_stride", c.collect.safe_keep_stride}};
  j["classifier"] = {{"hidden", c.classifier.hidden},
                     {"dropout", c.classifier.dropout},
                     {"H", c.classifier.H},
                     {"theta_c", c.classifier.theta_c},
                     {"epochs", c.classifier.epochs},
                     {"batch", c.classifier.batch},
                     {"lr", c.classifier.lr},
                     {"val_frac", c.classifier.val_frac},
                     {"max_samples", c.classifier.max_samples},
                     {"accuracy_floor", c.classifier.accuracy_floor},
                     {"unsafe_weight_scale", c.classifier.unsafe_weight_scale},
                     {"init_seed", c.classifier.init_seed},
                     {"shuffle_seed", c.classifier.shuffle_seed}};
  j["editor"] = {
      {"kind", c.editor.kind},
      {"lcwm",
       {{"n", c.editor.lcwm.n},
        {"m", c.editor.lcwm.m},
        {"hidden", c.editor.lcwm.hidden},
        {"epochs", c.editor.lcwm.epochs},
        {"batch", c.editor.lcwm.batch},
        {"lr", c.editor.lcwm.lr},
        {"val_frac", c.editor.lcwm.val_frac},
        {"max_sequences", c.editor.lcwm.max_sequences},
        {"init_seed", c.editor.lcwm.init_seed},
        {"shuffle_seed", c.editor.lcwm.shuffle_seed}}},
      {"kd",
       {{"bucket_width", c.editor.kd.bucket_width},
        {"max_points", c.editor.kd.max_points}}},
      {"sae",
       {{"dict", c.editor.sae.dict},
        {"l1", c.editor.sae.l1},
        {"top_k", c.editor.sae.top_k},
        {"gamma", c.editor.sae.gamma},
        {"epochs", c.editor.sae.epochs},
        {"batch", c.editor.sae.batch},
        {"lr", c.editor.sae.lr},
        {"max_samples", c.editor.sae.max_samples},
        {"init_seed", c.editor.sae.init_seed},
        {"shuffle_seed", c.editor.sae.shuffle_seed}}},
      {"ae",
       {{"bottleneck", c.editor.ae.bottleneck},
        {"epochs", c.editor.ae.epochs},
        {"batch", c.editor.ae.batch},
        {"lr", c.editor.ae.lr},
        {"max_samples", c.editor.ae.max_samples},
        {"init_seed", c.editor.ae.init_seed},
        {"shuffle_seed", c.editor.ae.shuffle_seed}}}};
  j["gate"] = {{"edit_site", c.gate.edit_site}, {"slide", c.gate.slide}};
  j["eval"] = {{"campaign_size", c.eval.campaign_size},
               {"seed_start", c.eval.seed_start},
               {"max_seed_scan", c.eval.max_seed_scan}};
  j["ablate"] = {{"h_grid", c.ablate.h_grid}, {"m_grid", c.ablate.m_grid}};
  return j.dump(2) + "\n";
}

std::string config_hash(const Config& c) {
  return Sha256::hex(config_to_json_text(c));
}

std::string config_key_reference() {
  // Provenance notes: [reference] = default published with the method;
  // [repo] = chosen for this implementation.
  return R"(config keys (JSON), defaults and provenance:
  seed                        1          [repo]  campaign seed recorded in manifests
  threads                     0          [repo]  0 = all hardware threads
  out_dir                     runs       [repo]  artifact root
  sim.arena_side              10.0       [reference]  room side, meters
  sim.n_agents                8          [reference]  agents per scenario
  sim.obstacle_density        0.20       [reference]  fraction of arena area
  sim.obstacle_radius         0.30       [reference]  0.6 m diameter obstacles
  sim.agent_radius            0.10       [repo]
  sim.max_steps               1500       [repo]
  sim.dt                      0.01       [repo]  100 Hz control
  sim.v_max                   2.0        [repo]
  sim.a_max                   4.0        [repo]
  sim.goal_tolerance          0.15       [repo]
  sim.action_noise_std        0.0        [repo]  seeded Gaussian toggle
  expert.k_goal               4.0        [repo]  potential-field attraction
  expert.k_damp               3.0        [repo]  velocity damping
  expert.k_neigh              1.2        [repo]  neighbor repulsion
  expert.neigh_range          2.5        [repo]
  expert.k_obst               (calibrated) [repo]  deliberately weak
  policy.embed                10         [reference]  d=30 with 10/10/10 split
  policy.enc_hidden           32         [repo]
  policy.down_hidden          64         [repo]
  policy.init_seed            11         [repo]
  policy.bc_*                 see defaults [repo]  cloning budget/thresholds
  collect.scenarios           3000       [repo]  collection campaign size
  collect.seed_start          200000     [repo]
  collect.h_max               320        [repo]  max relabelable horizon
  collect.safe_keep_stride    16         [repo]  far-safe thinning
  classifier.hidden           64         [reference]
  classifier.dropout          0.1        [repo]  not stated by the method
  classifier.H                250        [reference]  best horizon
  classifier.theta_c          0.5        [repo]  not stated by the method
  classifier.epochs/batch/lr  see defaults [repo]
  classifier.max_samples      1500000    [repo]
  classifier.accuracy_floor   0.90       [repo]
  classifier.unsafe_weight_scale 1.0     [repo]  1.0 = pure inverse frequency
  editor.kind                 lcwm_gru   [reference]  best editor
  editor.lcwm.n               3          [reference]  history length
  editor.lcwm.m               10         [reference]  prediction horizon
  editor.lcwm.hidden          32         [reference]
  editor.lcwm.epochs/batch/lr see defaults [repo]
  editor.kd.bucket_width      25         [repo]
  editor.kd.max_points        60000      [repo]
  editor.sae.dict             128        [repo]  method reports sensitivity only
  editor.sae.l1               1e-3       [repo]
  editor.sae.top_k            4          [repo]
  editor.sae.gamma            3.0        [repo]  signed; sweep both signs
  editor.ae.bottleneck        8          [repo]
  gate.edit_site              Z1_Partial [reference]  best site
  gate.slide                  true       [repo]  buffer slides during streaks
  eval.campaign_size          200        [repo]  desk scale (full scale: 2600)
  eval.seed_start             300000     [repo]  disjoint from training seeds
  eval.max_seed_scan          20000      [repo]
  ablate.h_grid               50..300    [reference]
  ablate.m_grid               5..30      [reference]
)";
}

}  // namespace lae::cli
