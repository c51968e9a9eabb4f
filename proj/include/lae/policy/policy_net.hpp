#pragma once

#include <string>
#include <vector>

#include "lae/latent.hpp"
#include "lae/nn/attention.hpp"
#include "lae/nn/mlp.hpp"
#include "lae/nn/weight_store.hpp"
#include "lae/policy/observation.hpp"

namespace lae::policy {

// Fixed observation pre-scaling baked into the network definition (not
// trained): brings goal vectors, velocities and SDF samples to comparable
// ranges before the encoders.
inline constexpr std::array<double, kObsDim> kInputScale = {
    0.1, 0.1, 0.5, 0.5, 1.0, 1.0,                    // self
    0.1, 0.1, 0.25, 0.25, 0.1, 0.1, 0.25, 0.25,      // neighbors
    0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};    // sdf grid

struct PolicyDims {
  int embed = 10;       // per-part embedding; 3*embed must equal kLatentDim
  int enc_hidden = 32;
  int down_hidden = 64;
};

// The base controller:
//   self(6) ----------- mlp ----------------> e_self (10) -----+
//   neighbor_k(4) ----- shared mlp -> token --\                |
//   sdf(9) ------------ mlp --------> token ---> attention --> Z1 (30)
// with e_self concatenated raw (attention runs only over the neighbor and
// obstacle tokens), so the Z1 partition stays clean for partial edits.
//   Z1 -> downstream mlp -> Z2 (30) -> action head -> a_max * tanh -> (2)
template <class S>
class PolicyCore {
 public:
  using M = nn::Mat<S>;

  PolicyCore(PolicyDims dims, double a_max, std::uint64_t seed)
      : dims_(dims),
        a_max_(a_max),
        self_enc_({nn::LayerSpec::make_dense(kSelfDim, dims.enc_hidden),
                   nn::LayerSpec::make_relu(),
                   nn::LayerSpec::make_dense(dims.enc_hidden, dims.embed)},
                  kSelfDim, Rng::derive_seed(seed, 1)),
        neigh_enc_({nn::LayerSpec::make_dense(kNeighFeat, dims.enc_hidden),
                    nn::LayerSpec::make_relu(),
                    nn::LayerSpec::make_dense(dims.enc_hidden, dims.embed)},
                   kNeighFeat, Rng::derive_seed(seed, 2)),
        obst_enc_({nn::LayerSpec::make_dense(kObstDim, dims.enc_hidden),
                   nn::LayerSpec::make_relu(),
                   nn::LayerSpec::make_dense(dims.enc_hidden, dims.embed)},
                  kObstDim, Rng::derive_seed(seed, 3)),
        attn_rng_(Rng::derive_seed(seed, 4)),
        attn_(dims.embed, 3, attn_rng_),
        downstream_({nn::LayerSpec::make_dense(3 * dims.embed, dims.down_hidden),
                     nn::LayerSpec::make_relu(),
                     nn::LayerSpec::make_dense(dims.down_hidden, 3 * dims.embed)},
                    3 * dims.embed, Rng::derive_seed(seed, 5)),
        head_rng_(Rng::derive_seed(seed, 6)),
        head_(3 * dims.embed, 2, head_rng_) {
    if (3 * dims.embed != kLatentDim)
      fail(ErrorKind::DimensionMismatch, "3*embed must equal latent dim");
  }

  int z_dim() const { return 3 * dims_.embed; }
  double a_max() const { return a_max_; }
  const PolicyDims& dims() const { return dims_; }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  // ---- batched training path (caches for backward) ----

  struct Forward {
    M action;  // B x 2
    M z1;      // B x 30
    M z2;      // B x 30
  };

  Forward forward(const M& obs, bool train) {
    if (frozen_ && train)
      fail(ErrorKind::FrozenModel, "policy is frozen; training forbidden");
    if (obs.cols() != kObsDim)
      fail(ErrorKind::DimensionMismatch, "observation width");
    const Eigen::Index b = obs.rows();
    const int e = dims_.embed;

    M e_self = self_enc_.forward(obs.leftCols(kSelfDim), train);

    M neigh_stack(2 * b, kNeighFeat);
    neigh_stack.topRows(b) = obs.middleCols(kSelfDim, kNeighFeat);
    neigh_stack.bottomRows(b) =
        obs.middleCols(kSelfDim + kNeighFeat, kNeighFeat);
    M neigh_tok = neigh_enc_.forward(neigh_stack, train);

    M obst_tok = obst_enc_.forward(obs.rightCols(kObstDim), train);

    std::vector<M> fused = attn_.forward(
        {neigh_tok.topRows(b), neigh_tok.bottomRows(b), obst_tok});

    Forward out;
    out.z1.resize(b, 3 * e);
    out.z1.leftCols(e) = e_self;
    out.z1.middleCols(e, e) = S(0.5) * (fused[0] + fused[1]);
    out.z1.rightCols(e) = fused[2];
    out.z2 = downstream_.forward(out.z1, train);
    M raw = head_.forward(out.z2, train);
    tanh_cache_ = raw.array().tanh().matrix();
    out.action = tanh_cache_ * static_cast<S>(a_max_);
    batch_ = b;
    return out;
  }

  // Backpropagates a loss gradient w.r.t. the action output through the
  // whole net; parameter grads accumulate.
  void backward(const M& d_action) {
    if (d_action.rows() != batch_)
      fail(ErrorKind::StaleCache, "policy backward batch mismatch");
    const Eigen::Index b = batch_;
    const int e = dims_.embed;
    M ones = M::Ones(b, 2);
    M d_raw = (d_action * static_cast<S>(a_max_))
                  .cwiseProduct(ones - tanh_cache_.cwiseProduct(tanh_cache_));
    M d_z2 = head_.backward(d_raw);
    M d_z1 = downstream_.backward(d_z2);

    M d_eneigh = S(0.5) * d_z1.middleCols(e, e);
    std::vector<M> d_tok =
        attn_.backward({d_eneigh, d_eneigh, d_z1.rightCols(e)});
    M d_neigh_stack(2 * b, e);
    d_neigh_stack.topRows(b) = d_tok[0];
    d_neigh_stack.bottomRows(b) = d_tok[1];
    neigh_enc_.backward(d_neigh_stack);
    obst_enc_.backward(d_tok[2]);
    self_enc_.backward(d_z1.leftCols(e));
  }

  // ---- cache-free frozen inference (const, thread-safe) ----

  struct Eval {
    Vec2 action;
    Latent z1;
    Latent z2;
  };

  M obs_row(const Observation& o) const {
    M row(1, kObsDim);
    int k = 0;
    for (double v : o.self_part) row(0, k++) = static_cast<S>(v);
    for (double v : o.neigh_part) row(0, k++) = static_cast<S>(v);
    for (double v : o.obst_part) row(0, k++) = static_cast<S>(v);
    for (int i = 0; i < kObsDim; ++i)
      row(0, i) *= static_cast<S>(kInputScale[i]);
    return row;
  }

  Eval act(const Observation& o) const {
    M row = obs_row(o);
    const int e = dims_.embed;
    M e_self = self_enc_.eval(row.leftCols(kSelfDim));
    M n1 = neigh_enc_.eval(row.middleCols(kSelfDim, kNeighFeat));
    M n2 = neigh_enc_.eval(row.middleCols(kSelfDim + kNeighFeat, kNeighFeat));
    M obst = obst_enc_.eval(row.rightCols(kObstDim));
    std::vector<M> fused = attn_.eval({n1, n2, obst});

    M z1(1, 3 * e);
    z1.leftCols(e) = e_self;
    z1.middleCols(e, e) = S(0.5) * (fused[0] + fused[1]);
    z1.rightCols(e) = fused[2];

    Eval out;
    for (int i = 0; i < 3 * e; ++i) out.z1[i] = static_cast<float>(z1(0, i));
    out.action = act_from_z1_row(z1, &out.z2);
    return out;
  }

  Vec2 act_from_z1(const Latent& z1) const {
    M row(1, kLatentDim);
    for (int i = 0; i < kLatentDim; ++i) row(0, i) = static_cast<S>(z1[i]);
    return act_from_z1_row(row, nullptr);
  }

  Vec2 act_from_z2(const Latent& z2) const {
    M row(1, kLatentDim);
    for (int i = 0; i < kLatentDim; ++i) row(0, i) = static_cast<S>(z2[i]);
    return head_row(row);
  }

  // ---- plumbing ----

  std::vector<nn::ParamRef<S>> params() {
    std::vector<nn::ParamRef<S>> out;
    self_enc_.append_params(out, "self_enc");
    neigh_enc_.append_params(out, "neigh_enc");
    obst_enc_.append_params(out, "obst_enc");
    attn_.append_params(out, "fusion");
    downstream_.append_params(out, "downstream");
    head_.append_params(out, "action_head");
    return out;
  }

 private:
  Vec2 act_from_z1_row(const M& z1, Latent* z2_out) const {
    M z2 = downstream_.eval(z1);
    if (z2_out)
      for (int i = 0; i < kLatentDim; ++i)
        (*z2_out)[i] = static_cast<float>(z2(0, i));
    return head_row(z2);
  }

  Vec2 head_row(const M& z2) const {
    M raw = head_.eval(z2);
    return Vec2{a_max_ * std::tanh(static_cast<double>(raw(0, 0))),
                a_max_ * std::tanh(static_cast<double>(raw(0, 1)))};
  }

  PolicyDims dims_;
  double a_max_;
  bool frozen_ = false;
  Eigen::Index batch_ = 0;

  nn::Mlp<S> self_enc_;
  nn::Mlp<S> neigh_enc_;
  nn::Mlp<S> obst_enc_;
  Rng attn_rng_;
  nn::SelfAttention<S> attn_;
  nn::Mlp<S> downstream_;
  Rng head_rng_;
  nn::Dense<S> head_;
  M tanh_cache_;
};

using Policy = PolicyCore<float>;

// Checkpoint = weight store + sidecar metadata (partition, dims, freeze
// hash). save writes <prefix>.ckpt and <prefix>.meta.json.
struct PolicyMeta {
  PolicyDims dims;
  double a_max = 4.0;
  std::string freeze_hash;  // sha256 of the .ckpt bytes at freeze time
  double bc_val_mse = 0.0;
  std::uint64_t bc_seed = 0;
};

void save_policy(Policy& net, PolicyMeta meta, const std::string& prefix);
struct LoadedPolicy {
  Policy net;
  PolicyMeta meta;
};
LoadedPolicy load_policy(const std::string& prefix);

// Recomputes the checkpoint hash and compares with the frozen one.
void assert_policy_frozen(const std::string& prefix, const PolicyMeta& meta);

}  // namespace lae::policy
