#include "lae/edit/ae.hpp"

#include <algorithm>
#include <numeric>

#include "lae/nn/adam.hpp"

namespace lae::edit {

using M = nn::Mat<float>;

AeEditor::AeEditor(int bottleneck_size, std::uint64_t seed)
    : bottleneck(bottleneck_size), init_seed(seed), ctor_rng_(seed),
      enc_(kLatentDim, bottleneck_size, ctor_rng_),
      dec_(bottleneck_size, kLatentDim, ctor_rng_) {}

std::vector<nn::ParamRef<float>> AeEditor::params() {
  std::vector<nn::ParamRef<float>> out;
  enc_.append_params(out, "enc");
  dec_.append_params(out, "dec");
  return out;
}

Latent AeEditor::produce(const std::vector<Latent>& history,
                         int /*unsafe_streak*/) const {
  check_history(history);
  M row(1, kLatentDim);
  for (int i = 0; i < kLatentDim; ++i) row(0, i) = history.back()[i];
  M out = dec_.eval(enc_.eval(row));
  Latent z;
  for (int i = 0; i < kLatentDim; ++i) z[i] = out(0, i);
  return z;
}

std::unique_ptr<AeEditor> train_ae(const std::vector<Latent>& latents,
                                   const AeConfig& cfg) {
  if (latents.empty()) fail(ErrorKind::EmptyDataset, "AE needs latents");

  std::vector<const Latent*> samples;
  const std::size_t total = latents.size();
  if (total > cfg.max_samples) {
    const double stride = static_cast<double>(total) / cfg.max_samples;
    for (std::size_t k = 0; k < cfg.max_samples; ++k)
      samples.push_back(&latents[static_cast<std::size_t>(k * stride)]);
  } else {
    for (const auto& z : latents) samples.push_back(&z);
  }

  Rng shuffle_rng(cfg.shuffle_seed);
  shuffle_rng.shuffle(samples);
  const std::size_t n = samples.size();
  const std::size_t n_val = std::max<std::size_t>(1, n / 10);
  const std::size_t n_train = n - n_val;

  auto editor = std::make_unique<AeEditor>(cfg.bottleneck, cfg.init_seed);
  auto params = editor->params();
  nn::Adam<float> opt(cfg.lr);

  std::vector<std::size_t> idx(n_train);
  std::iota(idx.begin(), idx.end(), 0);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(idx);
    for (std::size_t start = 0; start < n_train;
         start += static_cast<std::size_t>(cfg.batch)) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch, n_train - start);
      M xb(count, kLatentDim);
      for (std::size_t r = 0; r < count; ++r)
        for (int i = 0; i < kLatentDim; ++i)
          xb(r, i) = (*samples[idx[start + r]])[i];
      opt.zero_grads(params);
      M recon = editor->dec_.forward(editor->enc_.forward(xb, true), true);
      M grad;
      nn::mse_loss<float>(recon, xb, &grad);
      editor->enc_.backward(editor->dec_.backward(grad));
      opt.step(params);
    }
  }

  M xv(n_val, kLatentDim);
  for (std::size_t r = 0; r < n_val; ++r)
    for (int i = 0; i < kLatentDim; ++i) xv(r, i) = (*samples[n_train + r])[i];
  M rv = editor->dec_.eval(editor->enc_.eval(xv));
  editor->heldout_mse = nn::mse_loss<float>(rv, xv, nullptr) / kLatentDim;
  return editor;
}

}  // namespace lae::edit
