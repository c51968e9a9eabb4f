#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "lae/data/datasets.hpp"
#include "lae/latent.hpp"
#include "lae/nn/mlp.hpp"

namespace lae::safety {

struct ClassifierConfig {
  int hidden = 64;
  double dropout = 0.1;
  int H = 250;               // labeling horizon used for the dataset
  double theta_c = 0.5;      // decision threshold on sigmoid(logit)
  int epochs = 4;
  int batch = 512;
  double lr = 1e-3;
  double val_frac = 0.1;
  std::size_t max_samples = 1500000;  // deterministic stride thinning above
  double accuracy_floor = 0.90;       // ConvergenceFailure below this
  double unsafe_weight_scale = 1.0;   // multiplier on the inverse-freq weight
  std::uint64_t init_seed = 13;
  std::uint64_t shuffle_seed = 14;
};

struct ClassifierMetrics {
  double overall = 0.0;
  double safe_acc = 0.0;
  double unsafe_recall = 0.0;
  std::size_t n_train = 0;
  std::size_t n_val = 0;
  std::size_t n_safe = 0;
  std::size_t n_unsafe = 0;
};

// B_w: latent -> {safe, unsafe}. MLP 30 -> hidden (batchnorm, relu,
// dropout) -> 1 logit; unsafe iff sigmoid(logit) >= theta_c. Instances are
// frozen after training; classify is const and thread-safe.
class Classifier {
 public:
  Classifier(int hidden, double dropout, std::uint64_t seed);

  double prob_unsafe(const Latent& z) const;
  bool unsafe(const Latent& z) const { return prob_unsafe(z) >= theta_c; }

  nn::Mlp<float>& net() { return net_; }
  const nn::Mlp<float>& net() const { return net_; }
  std::size_t trainable_params();

  int hidden = 64;
  double dropout_rate = 0.1;
  double theta_c = 0.5;
  int H = 250;
  std::uint64_t init_seed = 0;
  ClassifierMetrics metrics;
  std::string freeze_hash;

  void save(const std::string& prefix);
  static Classifier load(const std::string& prefix);
  static void assert_frozen(const std::string& prefix,
                            const std::string& freeze_hash);

 private:
  nn::Mlp<float> net_;
};

// Supervised training with inverse-class-frequency weighting. Requires both
// classes (SingleClassDataset otherwise); deterministic per config seeds.
Classifier train_classifier(const data::ClassifierDataset& dataset,
                            const ClassifierConfig& cfg);

}  // namespace lae::safety
