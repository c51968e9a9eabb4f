#pragma once

#include <array>
#include <string>

#include "lae/data/trajectory_log.hpp"
#include "lae/latent.hpp"

namespace lae::edit {

enum class EditSite { Z1_All, Z1_Partial, Z2_All };

const char* edit_site_name(EditSite site);
EditSite edit_site_from_name(const std::string& name);

// Which latent stream an edit site operates on.
inline data::LatentSource latent_source_for(EditSite site) {
  return site == EditSite::Z2_All ? data::LatentSource::z2
                                  : data::LatentSource::z1;
}

struct EditMask {
  EditSite site = EditSite::Z1_Partial;
  std::array<std::uint8_t, kLatentDim> keep_edit{};  // true: take edited value

  // Z1_Partial: false on the self slice [0,10), true elsewhere.
  // Z1_All / Z2_All: all true.
  static EditMask make(EditSite site);
};

// Z''[i] = mask[i] ? edited[i] : original[i].
Latent apply_mask(const Latent& original, const Latent& edited,
                  const EditMask& mask);

}  // namespace lae::edit
