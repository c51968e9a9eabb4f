#pragma once

#include <vector>

#include "lae/edit/editor.hpp"
#include "lae/edit/mask.hpp"
#include "lae/policy/policy_net.hpp"
#include "lae/safety/classifier.hpp"

namespace lae::gate {

struct GateConfig {
  int n = 3;             // history buffer capacity = editor's required length
  bool slide = true;     // full buffer slides (default) or clears after edit
  edit::EditSite site = edit::EditSite::Z1_Partial;
};

struct GateStats {
  long flags_raised = 0;
  long edits_applied = 0;
};

// Per-agent gate state: FIFO of raw (unedited) latents plus statistics.
// The buffer resets on any safe classification.
struct GateState {
  std::vector<Latent> buffer;
  int unsafe_streak = 0;
  GateStats stats;
};

void reset(GateState& state);

struct GateTraceRow {
  int step = 0;
  int agent = 0;
  std::uint8_t unsafe = 0;
  int buffer_len = 0;
  std::uint8_t edited = 0;
};

struct GatedStepResult {
  Vec2 action;
  std::uint8_t unsafe = 0;
  std::uint8_t edited = 0;
  int buffer_len = 0;
  Latent z1;
  Latent z2;
};

// One inference-gate step:
//   classify raw Z1; safe -> forward unchanged, reset buffer;
//   unsafe -> append the raw latent; once the buffer holds n latents the
//   editor produces Z', the mask merges it with the raw latent, and the
//   action comes from the frozen downstream layers.
// While unsafe but under-filled, the unedited latent is forwarded.
GatedStepResult gated_step(const policy::Policy& policy,
                           const safety::Classifier& classifier,
                           const edit::Editor& editor,
                           const edit::EditMask& mask, const GateConfig& cfg,
                           const policy::Observation& obs, GateState& state);

// Everything a rollout needs to run gated.
struct GateBundle {
  const safety::Classifier* classifier = nullptr;
  const edit::Editor* editor = nullptr;
  edit::EditMask mask = edit::EditMask::make(edit::EditSite::Z1_Partial);
  GateConfig cfg;
};

}  // namespace lae::gate
