#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/edit/ae.hpp"
#include "lae/edit/lcwm.hpp"
#include "lae/edit/kd_editor.hpp"
#include "lae/edit/mask.hpp"
#include "lae/edit/sae.hpp"
#include "lae/policy/bc.hpp"
#include "lae/safety/classifier.hpp"
#include "lae/sim/scenario.hpp"

namespace lae::cli {

// The resolved campaign configuration. Every field has a default; unknown
// keys in a config file are rejected; the fully resolved form is echoed into
// every run manifest. `lae keys` prints the reference table with provenance
// notes.
struct Config {
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = all hardware threads
  std::string out_dir = "runs";

  sim::ScenarioParams sim;
  double action_noise_std = 0.0;  // seeded Gaussian on executed actions

  policy::ExpertGains expert;

  struct PolicyCfg {
    int embed = 10;
    int enc_hidden = 32;
    int down_hidden = 64;
    std::uint64_t init_seed = 11;
    int bc_scenarios = 60;
    std::uint64_t bc_seed_start = 100000;
    int bc_subsample_stride = 2;
    int bc_epochs = 25;
    int bc_batch = 256;
    double bc_lr = 1e-3;
    double bc_val_frac = 0.1;
    double bc_mse_threshold = 0.05;
    std::uint64_t bc_shuffle_seed = 12;
  } policy;

  struct CollectCfg {
    int scenarios = 3000;
    std::uint64_t seed_start = 200000;
    int h_max = 320;
    int safe_keep_stride = 16;
  } collect;

  safety::ClassifierConfig classifier;

  struct EditorCfg {
    std::string kind = "lcwm_gru";  // lcwm_gru | kd | sae | ae
    edit::LcwmConfig lcwm;
    edit::KdEditorConfig kd;
    edit::SaeConfig sae;
    edit::AeConfig ae;
  } editor;

  struct GateCfg {
    std::string edit_site = "Z1_Partial";  // Z1_All | Z1_Partial | Z2_All
    bool slide = true;
  } gate;

  struct EvalCfg {
    int campaign_size = 200;
    std::uint64_t seed_start = 300000;
    int max_seed_scan = 20000;
  } eval;

  struct AblateCfg {
    std::vector<int> h_grid{50, 100, 150, 200, 250, 300};
    std::vector<int> m_grid{5, 10, 15, 20, 25, 30};
  } ablate;

  edit::EditSite edit_site() const {
    return edit::edit_site_from_name(gate.edit_site);
  }
  int resolved_threads() const;
};

// Defaults when path is empty; otherwise parses JSON and rejects unknown
// keys with their full path.
Config load_config(const std::string& path);
Config config_from_json_text(const std::string& text);

// Fully resolved echo (defaults applied), with a canonical hash.
std::string config_to_json_text(const Config& cfg);
std::string config_hash(const Config& cfg);

// One line per key: name, default, provenance note.
std::string config_key_reference();

inline constexpr const char* kToolVersion = "laelab 1.0.0";

}  // namespace lae::cli
