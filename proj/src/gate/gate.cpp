#include "lae/gate/gate.hpp"

namespace lae::gate {

void reset(GateState& state) {
  state.buffer.clear();
  state.unsafe_streak = 0;
  state.stats = GateStats{};
}

GatedStepResult gated_step(const policy::Policy& policy,
                           const safety::Classifier& classifier,
                           const edit::Editor& editor,
                           const edit::EditMask& mask, const GateConfig& cfg,
                           const policy::Observation& obs, GateState& state) {
  if (editor.history_len() != cfg.n)
    fail(ErrorKind::WrongHistoryLength,
         "gate n does not match the editor's required history");

  auto eval = policy.act(obs);
  GatedStepResult out;
  out.z1 = eval.z1;
  out.z2 = eval.z2;
  out.action = eval.action;

  // Classification always consumes the raw Z1 of the current step.
  const bool unsafe = classifier.unsafe(eval.z1);
  out.unsafe = unsafe ? 1 : 0;
  if (!unsafe) {
    state.buffer.clear();
    state.unsafe_streak = 0;
    out.buffer_len = 0;
    return out;
  }

  state.stats.flags_raised += 1;
  state.unsafe_streak += 1;

  // The buffer stores raw latents of the edited stream; a full buffer
  // slides so edits keep firing through a sustained unsafe streak.
  const Latent& raw =
      cfg.site == edit::EditSite::Z2_All ? eval.z2 : eval.z1;
  if (static_cast<int>(state.buffer.size()) == cfg.n)
    state.buffer.erase(state.buffer.begin());
  state.buffer.push_back(raw);
  out.buffer_len = static_cast<int>(state.buffer.size());

  if (static_cast<int>(state.buffer.size()) == cfg.n) {
    const Latent edited = editor.produce(state.buffer, state.unsafe_streak);
    const Latent fused = edit::apply_mask(raw, edited, mask);
    out.action = cfg.site == edit::EditSite::Z2_All
                     ? policy.act_from_z2(fused)
                     : policy.act_from_z1(fused);
    out.edited = 1;
    state.stats.edits_applied += 1;
    if (!cfg.slide) state.buffer.clear();
  }
  return out;
}

}  // namespace lae::gate
