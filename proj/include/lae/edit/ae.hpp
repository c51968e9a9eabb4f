#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lae/edit/editor.hpp"
#include "lae/nn/layers.hpp"

namespace lae::edit {

struct AeConfig {
  int bottleneck = 8;
  int epochs = 40;
  int batch = 256;
  double lr = 1e-3;
  std::size_t max_samples = 60000;
  std::uint64_t init_seed = 25;
  std::uint64_t shuffle_seed = 26;
};

// Undercomplete linear autoencoder 30 -> 8 -> 30; editing is the
// encode-decode round trip.
class AeEditor : public Editor {
 public:
  AeEditor(int bottleneck, std::uint64_t seed);

  std::string kind() const override { return "ae"; }
  int history_len() const override { return 1; }
  Latent produce(const std::vector<Latent>& history,
                 int unsafe_streak) const override;

  std::vector<nn::ParamRef<float>> params();

  int bottleneck = 8;
  std::uint64_t init_seed = 0;
  double heldout_mse = 0.0;  // per-dim

  Rng ctor_rng_;
  nn::Dense<float> enc_;
  nn::Dense<float> dec_;
};

std::unique_ptr<AeEditor> train_ae(const std::vector<Latent>& latents,
                                   const AeConfig& cfg);

}  // namespace lae::edit
