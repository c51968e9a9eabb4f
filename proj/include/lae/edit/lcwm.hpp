#pragma once

#include <cstdint>
#include <memory>

#include "lae/data/datasets.hpp"
#include "lae/edit/editor.hpp"
#include "lae/nn/gru.hpp"
#include "lae/nn/layers.hpp"

namespace lae::edit {

// GRU sequence regressor: h_i = GRU(h_{i-1}, Z_i) over the history, then
// Z' = W h + b on the final hidden state.
template <class S>
class LcwmNet {
 public:
  LcwmNet(int latent_dim, int hidden, std::uint64_t seed)
      : rng_(seed), cell_(latent_dim, hidden, rng_),
        proj_(hidden, latent_dim, rng_) {}

  nn::Mat<S> forward(const std::vector<nn::Mat<S>>& seq, bool train) {
    const Eigen::Index b = seq.front().rows();
    nn::Mat<S> h = nn::Mat<S>::Zero(b, cell_.hidden_dim());
    cell_.clear_cache();
    for (const auto& x : seq) h = cell_.step(h, x);
    steps_ = static_cast<int>(seq.size());
    return proj_.forward(h, train);
  }

  void backward(const nn::Mat<S>& dy) {
    nn::Mat<S> dh = proj_.backward(dy);
    for (int k = 0; k < steps_; ++k) dh = cell_.backward_step(dh).first;
  }

  nn::Mat<S> eval(const std::vector<nn::Mat<S>>& seq) const {
    const Eigen::Index b = seq.front().rows();
    nn::Mat<S> h = nn::Mat<S>::Zero(b, cell_.hidden_dim());
    for (const auto& x : seq) h = cell_.step_eval(h, x);
    return proj_.eval(h);
  }

  std::vector<nn::ParamRef<S>> params() {
    std::vector<nn::ParamRef<S>> out;
    cell_.append_params(out, "gru");
    proj_.append_params(out, "proj");
    return out;
  }

  const nn::GruCell<S>& cell() const { return cell_; }

 private:
  Rng rng_;
  nn::GruCell<S> cell_;
  nn::Dense<S> proj_;
  int steps_ = 0;
};

struct LcwmConfig {
  int n = 3;
  int hidden = 32;
  int m = 10;
  int epochs = 10;
  int batch = 256;
  double lr = 1e-3;
  double val_frac = 0.1;
  std::size_t max_sequences = 200000;
  std::uint64_t init_seed = 17;
  std::uint64_t shuffle_seed = 18;
};

struct LcwmTrainReport {
  double train_mse = 0.0;  // per-dim
  double val_mse = 0.0;
  std::size_t n_sequences = 0;
};

class LcwmEditor : public Editor {
 public:
  LcwmEditor(int n, int m, int hidden, std::uint64_t seed)
      : n_(n), m_(m), hidden_(hidden), init_seed_(seed),
        net_(kLatentDim, hidden, seed) {}

  std::string kind() const override { return "lcwm_gru"; }
  int history_len() const override { return n_; }
  Latent produce(const std::vector<Latent>& history,
                 int unsafe_streak) const override;

  LcwmNet<float>& net() { return net_; }
  const LcwmNet<float>& net() const { return net_; }
  std::size_t trainable_params();

  int n() const { return n_; }
  int m() const { return m_; }
  int hidden() const { return hidden_; }
  std::uint64_t init_seed() const { return init_seed_; }
  LcwmTrainReport report;

 private:
  int n_, m_, hidden_;
  std::uint64_t init_seed_;
  LcwmNet<float> net_;
};

// Minimizes sum ||E(Z_h) - Z_{t*}||^2 over the dataset. Deterministic per
// seeds; reports per-dim train/held-out MSE.
std::unique_ptr<LcwmEditor> train_lcwm(const data::LcwmDataset& dataset,
                                       const LcwmConfig& cfg);

}  // namespace lae::edit
