#include "lae/edit/lcwm.hpp"

#include <algorithm>
#include <numeric>

#include "lae/nn/adam.hpp"
#include "lae/rng.hpp"

namespace lae::edit {

using M = nn::Mat<float>;

Latent LcwmEditor::produce(const std::vector<Latent>& history,
                           int /*unsafe_streak*/) const {
  check_history(history);
  std::vector<M> seq;
  seq.reserve(history.size());
  for (const auto& z : history) {
    M row(1, kLatentDim);
    for (int i = 0; i < kLatentDim; ++i) row(0, i) = z[i];
    seq.push_back(std::move(row));
  }
  M out = net_.eval(seq);
  Latent z;
  for (int i = 0; i < kLatentDim; ++i) z[i] = out(0, i);
  return z;
}

std::size_t LcwmEditor::trainable_params() {
  auto params = net_.params();
  return nn::param_count(params, true);
}

std::unique_ptr<LcwmEditor> train_lcwm(const data::LcwmDataset& dataset,
                                       const LcwmConfig& cfg) {
  if (dataset.sequences.empty())
    fail(ErrorKind::EmptyDataset, "LCWM dataset is empty");
  for (const auto& s : dataset.sequences)
    if (static_cast<int>(s.history.size()) != dataset.n)
      fail(ErrorKind::DimensionMismatch, "mixed history lengths in dataset");
  if (dataset.n != cfg.n)
    fail(ErrorKind::ConfigError, "dataset n does not match editor config n");

  // Deterministic stride thinning above the sequence budget.
  std::vector<const data::LcwmSequence*> seqs;
  const std::size_t total = dataset.sequences.size();
  if (total > cfg.max_sequences) {
    const double stride = static_cast<double>(total) / cfg.max_sequences;
    seqs.reserve(cfg.max_sequences);
    for (std::size_t k = 0; k < cfg.max_sequences; ++k)
      seqs.push_back(&dataset.sequences[static_cast<std::size_t>(k * stride)]);
  } else {
    seqs.reserve(total);
    for (const auto& s : dataset.sequences) seqs.push_back(&s);
  }

  Rng shuffle_rng(cfg.shuffle_seed);
  shuffle_rng.shuffle(seqs);
  const std::size_t n_total = seqs.size();
  const std::size_t n_val = std::max<std::size_t>(
      1, static_cast<std::size_t>(n_total * cfg.val_frac));
  const std::size_t n_train = n_total - n_val;

  auto editor = std::make_unique<LcwmEditor>(cfg.n, cfg.m, cfg.hidden,
                                             cfg.init_seed);
  editor->trained_source = dataset.source;
  auto params = editor->net().params();
  nn::Adam<float> opt(cfg.lr);

  auto make_batch = [&](std::size_t start, std::size_t count,
                        const std::vector<std::size_t>* order,
                        std::vector<M>& xs, M& y) {
    xs.assign(cfg.n, M(count, kLatentDim));
    y.resize(count, kLatentDim);
    for (std::size_t r = 0; r < count; ++r) {
      std::size_t si = order ? (*order)[start + r] : start + r;
      const auto* s = seqs[si];
      for (int k = 0; k < cfg.n; ++k)
        for (int i = 0; i < kLatentDim; ++i) xs[k](r, i) = s->history[k][i];
      for (int i = 0; i < kLatentDim; ++i) y(r, i) = s->target[i];
    }
  };

  std::vector<std::size_t> idx(n_train);
  std::iota(idx.begin(), idx.end(), 0);
  double last_train_mse = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(idx);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n_train;
         start += static_cast<std::size_t>(cfg.batch)) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch, n_train - start);
      std::vector<M> xs;
      M y;
      make_batch(start, count, &idx, xs, y);
      opt.zero_grads(params);
      M pred = editor->net().forward(xs, true);
      M grad;
      loss_sum += nn::mse_loss<float>(pred, y, &grad) / kLatentDim;
      editor->net().backward(grad);
      opt.step(params);
      ++batches;
    }
    last_train_mse = batches ? loss_sum / batches : 0.0;
  }

  std::vector<M> xs_val;
  M y_val;
  make_batch(n_train, n_val, nullptr, xs_val, y_val);
  M pred = editor->net().eval(xs_val);
  editor->report.train_mse = last_train_mse;
  editor->report.val_mse =
      nn::mse_loss<float>(pred, y_val, nullptr) / kLatentDim;
  editor->report.n_sequences = n_total;
  return editor;
}

}  // namespace lae::edit
