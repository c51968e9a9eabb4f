#pragma once

#include <string>
#include <vector>

#include "lae/common.hpp"
#include "lae/data/trajectory_log.hpp"
#include "lae/latent.hpp"

namespace lae::edit {

// One editing interface for every strategy. produce() is const and pure:
// repeated calls on the same input return the same output and never mutate
// the editor. history holds exactly history_len() latents, oldest first.
// unsafe_streak is the count of consecutive unsafe flags so far; retrieval
// editors use it as their time-to-collision proxy, the others ignore it.
class Editor {
 public:
  virtual ~Editor() = default;
  virtual std::string kind() const = 0;
  virtual int history_len() const = 0;
  virtual Latent produce(const std::vector<Latent>& history,
                         int unsafe_streak) const = 0;

  // Which latent stream the editor was built from; the gate's edit site
  // must match.
  data::LatentSource trained_source = data::LatentSource::z1;

 protected:
  void check_history(const std::vector<Latent>& history) const {
    if (static_cast<int>(history.size()) != history_len())
      fail(ErrorKind::WrongHistoryLength,
           kind() + " editor needs " + std::to_string(history_len()) +
               " latents, got " + std::to_string(history.size()));
  }
};

}  // namespace lae::edit
