#include "lae/edit/sae.hpp"

#include <algorithm>
#include <numeric>

#include "lae/nn/adam.hpp"

namespace lae::edit {

using M = nn::Mat<float>;

SaeEditor::SaeEditor(int dict_size, std::uint64_t seed)
    : dict(dict_size), init_seed(seed), ctor_rng_(seed),
      enc_(kLatentDim, dict_size, ctor_rng_),
      dec_(dict_size, kLatentDim, ctor_rng_) {}

M SaeEditor::encode_eval(const M& x) const {
  return enc_.eval(x).cwiseMax(0.0f);
}

M SaeEditor::decode_eval(const M& h) const { return dec_.eval(h); }

std::vector<nn::ParamRef<float>> SaeEditor::params() {
  std::vector<nn::ParamRef<float>> out;
  enc_.append_params(out, "enc");
  dec_.append_params(out, "dec");
  return out;
}

Latent SaeEditor::edit(const Latent& z, double g, int k) const {
  M row(1, kLatentDim);
  for (int i = 0; i < kLatentDim; ++i) row(0, i) = z[i];
  M h = encode_eval(row);
  const int n_scaled = std::min<int>(k, static_cast<int>(ranked_units.size()));
  for (int i = 0; i < n_scaled; ++i)
    h(0, ranked_units[i]) *= static_cast<float>(g);
  M out = decode_eval(h);
  Latent result;
  for (int i = 0; i < kLatentDim; ++i) result[i] = out(0, i);
  return result;
}

Latent SaeEditor::produce(const std::vector<Latent>& history,
                          int /*unsafe_streak*/) const {
  check_history(history);
  return edit(history.back(), gamma, top_k);
}

std::unique_ptr<SaeEditor> train_sae(const std::vector<Latent>& unsafe_latents,
                                     const std::vector<Latent>& safe_latents,
                                     const SaeConfig& cfg) {
  if (unsafe_latents.empty())
    fail(ErrorKind::EmptyDataset, "SAE needs unsafe latents");

  std::vector<const Latent*> samples;
  const std::size_t total = unsafe_latents.size();
  if (total > cfg.max_samples) {
    const double stride = static_cast<double>(total) / cfg.max_samples;
    for (std::size_t k = 0; k < cfg.max_samples; ++k)
      samples.push_back(&unsafe_latents[static_cast<std::size_t>(k * stride)]);
  } else {
    for (const auto& z : unsafe_latents) samples.push_back(&z);
  }

  Rng shuffle_rng(cfg.shuffle_seed);
  shuffle_rng.shuffle(samples);
  const std::size_t n = samples.size();
  const std::size_t n_val = std::max<std::size_t>(1, n / 10);
  const std::size_t n_train = n - n_val;

  auto editor = std::make_unique<SaeEditor>(cfg.dict, cfg.init_seed);
  editor->gamma = cfg.gamma;
  editor->top_k = cfg.top_k;
  auto params = editor->params();
  nn::Adam<float> opt(cfg.lr);

  auto to_mat = [](const std::vector<const Latent*>& src, std::size_t begin,
                   std::size_t count) {
    M out(count, kLatentDim);
    for (std::size_t r = 0; r < count; ++r)
      for (int i = 0; i < kLatentDim; ++i) out(r, i) = (*src[begin + r])[i];
    return out;
  };

  std::vector<std::size_t> idx(n_train);
  std::iota(idx.begin(), idx.end(), 0);
  const float l1 = static_cast<float>(cfg.l1);
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
      M pre = editor->enc_.forward(xb, true);
      M mask = (pre.array() > 0.0f).cast<float>();
      M h = pre.cwiseMax(0.0f);
      M recon = editor->dec_.forward(h, true);
      M d_recon;
      nn::mse_loss<float>(recon, xb, &d_recon);
      // L1 subgradient on the (non-negative) code, averaged over the batch.
      M dh = editor->dec_.backward(d_recon);
      dh.array() += l1 / static_cast<float>(count);
      editor->enc_.backward(dh.cwiseProduct(mask));
      opt.step(params);
    }
  }

  // Held-out reconstruction quality and code sparsity.
  M xv = to_mat(samples, n_train, n_val);
  M hv = editor->encode_eval(xv);
  M rv = editor->decode_eval(hv);
  editor->report.recon_mse =
      nn::mse_loss<float>(rv, xv, nullptr) / kLatentDim;
  editor->report.hidden_sparsity =
      static_cast<double>((hv.array() == 0.0f).count()) / hv.size();
  editor->report.n_train = n_train;

  // Unit ranking: mean activation on unsafe minus mean on safe.
  M mean_unsafe = editor->encode_eval(to_mat(samples, 0, n)).colwise().mean();
  M mean_safe = M::Zero(1, cfg.dict);
  if (!safe_latents.empty()) {
    std::vector<const Latent*> safe_ptrs;
    const std::size_t safe_total = safe_latents.size();
    const std::size_t safe_cap = std::min(safe_total, cfg.max_samples);
    const double stride = static_cast<double>(safe_total) / safe_cap;
    for (std::size_t k = 0; k < safe_cap; ++k)
      safe_ptrs.push_back(&safe_latents[static_cast<std::size_t>(k * stride)]);
    mean_safe =
        editor->encode_eval(to_mat(safe_ptrs, 0, safe_ptrs.size()))
            .colwise()
            .mean();
  }
  std::vector<int> units(cfg.dict);
  std::iota(units.begin(), units.end(), 0);
  std::stable_sort(units.begin(), units.end(), [&](int a, int b) {
    const float da = mean_unsafe(0, a) - mean_safe(0, a);
    const float db = mean_unsafe(0, b) - mean_safe(0, b);
    return da > db || (da == db && a < b);
  });
  editor->ranked_units = std::move(units);
  return editor;
}

}  // namespace lae::edit
