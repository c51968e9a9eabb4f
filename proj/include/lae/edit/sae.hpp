#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lae/edit/editor.hpp"
#include "lae/nn/layers.hpp"

namespace lae::edit {

struct SaeConfig {
  int dict = 128;      // overcomplete code size D
  double l1 = 1e-3;    // sparsity penalty on the hidden code
  int top_k = 4;       // units scaled at edit time
  double gamma = 3.0;  // steering gain (signed; 1.0 = plain reconstruction)
  int epochs = 40;
  int batch = 256;
  double lr = 1e-3;
  std::size_t max_samples = 60000;
  std::uint64_t init_seed = 21;
  std::uint64_t shuffle_seed = 22;
};

struct SaeTrainReport {
  double recon_mse = 0.0;       // per-dim, held-out unsafe latents
  double hidden_sparsity = 0.0; // fraction of zero activations
  std::size_t n_train = 0;
};

// Sparse autoencoder 30 -> D (relu, L1) -> 30 trained on unsafe latents,
// with units ranked by mean-activation difference (unsafe minus safe).
// Editing encodes, scales the top-k ranked units by gamma, decodes.
class SaeEditor : public Editor {
 public:
  SaeEditor(int dict, std::uint64_t seed);

  std::string kind() const override { return "sae"; }
  int history_len() const override { return 1; }
  Latent produce(const std::vector<Latent>& history,
                 int unsafe_streak) const override;

  Latent edit(const Latent& z, double gamma, int top_k) const;
  nn::Mat<float> encode_eval(const nn::Mat<float>& x) const;
  nn::Mat<float> decode_eval(const nn::Mat<float>& h) const;
  std::vector<nn::ParamRef<float>> params();

  int dict = 128;
  double gamma = 3.0;
  int top_k = 4;
  std::uint64_t init_seed = 0;
  std::vector<int> ranked_units;  // descending unsafe-correlation
  SaeTrainReport report;

  Rng ctor_rng_;
  nn::Dense<float> enc_;
  nn::Dense<float> dec_;
};

std::unique_ptr<SaeEditor> train_sae(const std::vector<Latent>& unsafe_latents,
                                     const std::vector<Latent>& safe_latents,
                                     const SaeConfig& cfg);

}  // namespace lae::edit
