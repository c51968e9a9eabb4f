#include "lae/edit/mask.hpp"

namespace lae::edit {

const char* edit_site_name(EditSite site) {
  switch (site) {
    case EditSite::Z1_All: return "Z1_All";
    case EditSite::Z1_Partial: return "Z1_Partial";
    case EditSite::Z2_All: return "Z2_All";
  }
  return "?";
}

EditSite edit_site_from_name(const std::string& name) {
  if (name == "Z1_All") return EditSite::Z1_All;
  if (name == "Z1_Partial") return EditSite::Z1_Partial;
  if (name == "Z2_All") return EditSite::Z2_All;
  fail(ErrorKind::ConfigError, "unknown edit site: " + name);
}

EditMask EditMask::make(EditSite site) {
  EditMask m;
  m.site = site;
  for (int i = 0; i < kLatentDim; ++i) {
    bool edit = true;
    if (site == EditSite::Z1_Partial && i < kSelfSliceEnd) edit = false;
    m.keep_edit[i] = edit ? 1 : 0;
  }
  return m;
}

Latent apply_mask(const Latent& original, const Latent& edited,
                  const EditMask& mask) {
  Latent out;
  for (int i = 0; i < kLatentDim; ++i)
    out[i] = mask.keep_edit[i] ? edited[i] : original[i];
  return out;
}

}  // namespace lae::edit
