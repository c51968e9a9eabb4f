#pragma once

#include <memory>
#include <string>

#include "lae/edit/ae.hpp"
#include "lae/edit/kd_editor.hpp"
#include "lae/edit/lcwm.hpp"
#include "lae/edit/sae.hpp"

namespace lae::edit {

// Tagged checkpoints: <prefix>.meta.json carries the kind plus
// hyperparameters, <prefix>.ckpt the weights (or index blob for kd).
void save_editor(Editor& editor, const std::string& prefix);

struct LoadedEditor {
  std::unique_ptr<Editor> editor;
  std::string kind;
  std::string freeze_hash;
};
LoadedEditor load_editor(const std::string& prefix);

void assert_editor_frozen(const std::string& prefix,
                          const std::string& freeze_hash);

}  // namespace lae::edit
