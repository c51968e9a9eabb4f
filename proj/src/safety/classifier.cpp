#include "lae/safety/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "lae/binio.hpp"
#include "lae/nn/adam.hpp"
#include "lae/nn/weight_store.hpp"
#include "lae/rng.hpp"
#include "lae/sha256.hpp"

namespace lae::safety {

using nlohmann::json;
using M = nn::Mat<float>;

namespace {

std::vector<nn::LayerSpec> classifier_specs(int hidden, double dropout) {
  return {nn::LayerSpec::make_dense(kLatentDim, hidden),
          nn::LayerSpec::make_batchnorm(), nn::LayerSpec::make_relu(),
          nn::LayerSpec::make_dropout(dropout),
          nn::LayerSpec::make_dense(hidden, 1)};
}

}  // namespace

Classifier::Classifier(int hidden_size, double dropout, std::uint64_t seed)
    : hidden(hidden_size),
      dropout_rate(dropout),
      init_seed(seed),
      net_(classifier_specs(hidden_size, dropout), kLatentDim, seed) {}

double Classifier::prob_unsafe(const Latent& z) const {
  M row(1, kLatentDim);
  for (int i = 0; i < kLatentDim; ++i) row(0, i) = z[i];
  const double logit = static_cast<double>(net_.eval(row)(0, 0));
  return 1.0 / (1.0 + std::exp(-logit));
}

std::size_t Classifier::trainable_params() {
  auto params = net_.params();
  return nn::param_count(params, true);
}

Classifier train_classifier(const data::ClassifierDataset& dataset,
                            const ClassifierConfig& cfg) {
  const std::size_t n_unsafe_all = dataset.n_unsafe();
  if (dataset.samples.empty())
    fail(ErrorKind::EmptyDataset, "classifier dataset is empty");
  if (n_unsafe_all == 0 || n_unsafe_all == dataset.samples.size())
    fail(ErrorKind::SingleClassDataset,
         "classifier training needs both classes");

  // Deterministic stride thinning down to max_samples.
  std::vector<const data::LabeledSample*> samples;
  const std::size_t total = dataset.samples.size();
  if (total > cfg.max_samples) {
    const double stride = static_cast<double>(total) / cfg.max_samples;
    samples.reserve(cfg.max_samples);
    for (std::size_t k = 0; k < cfg.max_samples; ++k)
      samples.push_back(
          &dataset.samples[static_cast<std::size_t>(k * stride)]);
  } else {
    samples.reserve(total);
    for (const auto& s : dataset.samples) samples.push_back(&s);
  }

  Rng shuffle_rng(cfg.shuffle_seed);
  shuffle_rng.shuffle(samples);
  const std::size_t n = samples.size();
  const std::size_t n_val =
      std::max<std::size_t>(1, static_cast<std::size_t>(n * cfg.val_frac));
  const std::size_t n_train = n - n_val;

  std::size_t train_unsafe = 0;
  for (std::size_t i = 0; i < n_train; ++i) train_unsafe += samples[i]->unsafe;
  const std::size_t train_safe = n_train - train_unsafe;
  if (train_unsafe == 0 || train_safe == 0)
    fail(ErrorKind::SingleClassDataset, "train split lost a class");

  const float w_safe =
      static_cast<float>(n_train) / (2.0f * static_cast<float>(train_safe));
  const float w_unsafe =
      static_cast<float>(n_train) / (2.0f * static_cast<float>(train_unsafe)) *
      static_cast<float>(cfg.unsafe_weight_scale);

  Classifier model(cfg.hidden, cfg.dropout, cfg.init_seed);
  model.theta_c = cfg.theta_c;
  model.H = cfg.H;
  auto params = model.net().params();
  nn::Adam<float> opt(cfg.lr);

  std::vector<std::size_t> idx(n_train);
  std::iota(idx.begin(), idx.end(), 0);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(idx);
    for (std::size_t start = 0; start < n_train;
         start += static_cast<std::size_t>(cfg.batch)) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch, n_train - start);
      if (count < 2) continue;  // batchnorm needs a real batch
      M xb(count, kLatentDim), yb(count, 1), wb(count, 1);
      for (std::size_t r = 0; r < count; ++r) {
        const auto* s = samples[idx[start + r]];
        for (int k = 0; k < kLatentDim; ++k) xb(r, k) = s->z[k];
        yb(r, 0) = s->unsafe ? 1.0f : 0.0f;
        wb(r, 0) = s->unsafe ? w_unsafe : w_safe;
      }
      opt.zero_grads(params);
      M logits = model.net().forward(xb, true);
      M grad;
      nn::weighted_bce_loss<float>(logits, yb, wb, &grad);
      model.net().backward(grad);
      opt.step(params);
    }
  }

  // Held-out metrics in eval mode (frozen running stats).
  M xv(n_val, kLatentDim);
  std::vector<std::uint8_t> yv(n_val);
  for (std::size_t r = 0; r < n_val; ++r) {
    const auto* s = samples[n_train + r];
    for (int k = 0; k < kLatentDim; ++k) xv(r, k) = s->z[k];
    yv[r] = s->unsafe;
  }
  M logits = model.net().eval(xv);
  std::size_t correct = 0, safe_total = 0, safe_correct = 0, unsafe_total = 0,
              unsafe_correct = 0;
  for (std::size_t r = 0; r < n_val; ++r) {
    const double p = 1.0 / (1.0 + std::exp(-static_cast<double>(logits(r, 0))));
    const bool pred = p >= model.theta_c;
    const bool truth = yv[r] != 0;
    correct += pred == truth;
    if (truth) {
      ++unsafe_total;
      unsafe_correct += pred;
    } else {
      ++safe_total;
      safe_correct += !pred;
    }
  }
  model.metrics.overall = static_cast<double>(correct) / n_val;
  model.metrics.safe_acc =
      safe_total ? static_cast<double>(safe_correct) / safe_total : 1.0;
  model.metrics.unsafe_recall =
      unsafe_total ? static_cast<double>(unsafe_correct) / unsafe_total : 1.0;
  model.metrics.n_train = n_train;
  model.metrics.n_val = n_val;
  model.metrics.n_unsafe = dataset.n_unsafe();
  model.metrics.n_safe = dataset.samples.size() - model.metrics.n_unsafe;

  if (model.metrics.overall < cfg.accuracy_floor)
    fail(ErrorKind::ConvergenceFailure,
         "classifier held-out accuracy " +
             std::to_string(model.metrics.overall) + " below floor " +
             std::to_string(cfg.accuracy_floor));
  return model;
}

void Classifier::save(const std::string& prefix) {
  auto params = net_.params();
  auto bytes = nn::save_weights(params).to_bytes();
  write_file_bytes(prefix + ".ckpt", bytes);
  freeze_hash = Sha256::hex(bytes.data(), bytes.size());

  json j;
  j["kind"] = "classifier";
  j["hidden"] = hidden;
  j["dropout"] = dropout_rate;
  j["theta_c"] = theta_c;
  j["H"] = H;
  j["init_seed"] = init_seed;
  j["freeze_hash"] = freeze_hash;
  j["metrics"] = {{"overall", metrics.overall},
                  {"safe_acc", metrics.safe_acc},
                  {"unsafe_recall", metrics.unsafe_recall},
                  {"n_train", metrics.n_train},
                  {"n_val", metrics.n_val},
                  {"n_safe", metrics.n_safe},
                  {"n_unsafe", metrics.n_unsafe}};
  write_file_text(prefix + ".meta.json", j.dump(2) + "\n");
}

Classifier Classifier::load(const std::string& prefix) {
  json j;
  try {
    j = json::parse(read_file_text(prefix + ".meta.json"));
  } catch (const Error&) {
    fail(ErrorKind::MissingArtifact,
         "classifier checkpoint not found: " + prefix);
  }
  Classifier model(j.at("hidden").get<int>(), j.at("dropout").get<double>(),
                   j.at("init_seed").get<std::uint64_t>());
  model.theta_c = j.at("theta_c").get<double>();
  model.H = j.at("H").get<int>();
  model.freeze_hash = j.at("freeze_hash").get<std::string>();
  const auto& m = j.at("metrics");
  model.metrics.overall = m.at("overall").get<double>();
  model.metrics.safe_acc = m.at("safe_acc").get<double>();
  model.metrics.unsafe_recall = m.at("unsafe_recall").get<double>();
  model.metrics.n_train = m.at("n_train").get<std::size_t>();
  model.metrics.n_val = m.at("n_val").get<std::size_t>();
  model.metrics.n_safe = m.at("n_safe").get<std::size_t>();
  model.metrics.n_unsafe = m.at("n_unsafe").get<std::size_t>();

  auto bytes = read_file_bytes(prefix + ".ckpt");
  if (Sha256::hex(bytes.data(), bytes.size()) != model.freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "classifier checkpoint bytes do not match the freeze hash");
  auto store = nn::WeightStore::from_bytes(bytes);
  auto params = model.net().params();
  nn::load_weights(store, params);
  return model;
}

void Classifier::assert_frozen(const std::string& prefix,
                               const std::string& freeze_hash) {
  if (sha256_file_hex(prefix + ".ckpt") != freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "classifier checkpoint changed after freeze: " + prefix);
}

}  // namespace lae::safety
