#pragma once

#include <cmath>
#include <vector>

#include "lae/nn/layers.hpp"

namespace lae::nn {

// Single-head scaled dot-product self-attention over a small fixed token
// set. Tokens are passed as one matrix per token (batch x dim) so the batch
// dimension stays a plain Eigen matrix op.
template <class S>
class SelfAttention {
 public:
  SelfAttention(int dim, int n_tokens, Rng& rng)
      : dim_(dim), n_tokens_(n_tokens) {
    auto init = [&](Mat<S>& m) {
      m.setZero(dim, dim);
      he_uniform_init(m, dim, rng);
    };
    init(wq_);
    init(wk_);
    init(wv_);
    gwq_.setZero(dim, dim);
    gwk_.setZero(dim, dim);
    gwv_.setZero(dim, dim);
  }

  std::vector<Mat<S>> forward(const std::vector<Mat<S>>& tokens) {
    if (static_cast<int>(tokens.size()) != n_tokens_)
      fail(ErrorKind::DimensionMismatch, "attention token count");
    for (const auto& t : tokens)
      if (t.cols() != dim_)
        fail(ErrorKind::DimensionMismatch, "attention token width");

    cache_.tokens = tokens;
    const int T = n_tokens_;
    const Eigen::Index b = tokens[0].rows();
    const S scale = static_cast<S>(1.0 / std::sqrt(double(dim_)));

    cache_.q.resize(T);
    cache_.k.resize(T);
    cache_.v.resize(T);
    for (int i = 0; i < T; ++i) {
      cache_.q[i] = tokens[i] * wq_;
      cache_.k[i] = tokens[i] * wk_;
      cache_.v[i] = tokens[i] * wv_;
    }

    // Row-softmax over scores s_ij = <q_i, k_j> / sqrt(d), per batch row.
    cache_.attn.assign(T, std::vector<Mat<S>>(T));
    std::vector<Mat<S>> out(T);
    for (int i = 0; i < T; ++i) {
      Mat<S> scores(b, T);
      for (int j = 0; j < T; ++j)
        scores.col(j) =
            (cache_.q[i].cwiseProduct(cache_.k[j])).rowwise().sum() * scale;
      Mat<S> row_max = scores.rowwise().maxCoeff();
      Mat<S> ex = (scores.colwise() - row_max.col(0)).array().exp().matrix();
      Mat<S> denom = ex.rowwise().sum();
      out[i].setZero(b, dim_);
      for (int j = 0; j < T; ++j) {
        Mat<S> a = ex.col(j).cwiseQuotient(denom.col(0));
        cache_.attn[i][j] = a;  // b x 1
        out[i] += cache_.v[j].array().colwise() * a.col(0).array();
      }
    }
    return out;
  }

  std::vector<Mat<S>> eval(const std::vector<Mat<S>>& tokens) const {
    if (static_cast<int>(tokens.size()) != n_tokens_)
      fail(ErrorKind::DimensionMismatch, "attention token count");
    const int T = n_tokens_;
    const Eigen::Index b = tokens[0].rows();
    const S scale = static_cast<S>(1.0 / std::sqrt(double(dim_)));
    std::vector<Mat<S>> q(T), k(T), v(T), out(T);
    for (int i = 0; i < T; ++i) {
      q[i] = tokens[i] * wq_;
      k[i] = tokens[i] * wk_;
      v[i] = tokens[i] * wv_;
    }
    for (int i = 0; i < T; ++i) {
      Mat<S> scores(b, T);
      for (int j = 0; j < T; ++j)
        scores.col(j) = (q[i].cwiseProduct(k[j])).rowwise().sum() * scale;
      Mat<S> row_max = scores.rowwise().maxCoeff();
      Mat<S> ex = (scores.colwise() - row_max.col(0)).array().exp().matrix();
      Mat<S> denom = ex.rowwise().sum();
      out[i].setZero(b, dim_);
      for (int j = 0; j < T; ++j) {
        Mat<S> a = ex.col(j).cwiseQuotient(denom.col(0));
        out[i] += v[j].array().colwise() * a.col(0).array();
      }
    }
    return out;
  }

  std::vector<Mat<S>> backward(const std::vector<Mat<S>>& dout) {
    if (cache_.tokens.empty())
      fail(ErrorKind::StaleCache, "attention backward without forward");
    const int T = n_tokens_;
    const Eigen::Index b = cache_.tokens[0].rows();
    const S scale = static_cast<S>(1.0 / std::sqrt(double(dim_)));

    std::vector<Mat<S>> dq(T), dk(T), dv(T), dtok(T);
    for (int i = 0; i < T; ++i) {
      dq[i].setZero(b, dim_);
      dk[i].setZero(b, dim_);
      dv[i].setZero(b, dim_);
      dtok[i].setZero(b, dim_);
    }

    for (int i = 0; i < T; ++i) {
      // da_ij = <dout_i, v_j> per row; softmax jacobian then spreads to
      // scores: ds_ij = a_ij * (da_ij - sum_k a_ik da_ik).
      Mat<S> da(b, T);
      for (int j = 0; j < T; ++j)
        da.col(j) = (dout[i].cwiseProduct(cache_.v[j])).rowwise().sum();
      Mat<S> mix = Mat<S>::Zero(b, 1);
      for (int k = 0; k < T; ++k)
        mix.col(0) += cache_.attn[i][k].col(0).cwiseProduct(da.col(k));
      for (int j = 0; j < T; ++j) {
        Mat<S> ds =
            cache_.attn[i][j].col(0).cwiseProduct(da.col(j) - mix.col(0)) *
            scale;  // b x 1
        dq[i] += cache_.k[j].array().colwise() * ds.col(0).array();
        dk[j] += cache_.q[i].array().colwise() * ds.col(0).array();
        dv[j] += dout[i].array().colwise() * cache_.attn[i][j].col(0).array();
      }
    }

    for (int i = 0; i < T; ++i) {
      gwq_ += cache_.tokens[i].transpose() * dq[i];
      gwk_ += cache_.tokens[i].transpose() * dk[i];
      gwv_ += cache_.tokens[i].transpose() * dv[i];
      dtok[i] = dq[i] * wq_.transpose() + dk[i] * wk_.transpose() +
                dv[i] * wv_.transpose();
    }
    return dtok;
  }

  void append_params(std::vector<ParamRef<S>>& out, const std::string& p) {
    out.push_back({p + ".wq", &wq_, &gwq_, true});
    out.push_back({p + ".wk", &wk_, &gwk_, true});
    out.push_back({p + ".wv", &wv_, &gwv_, true});
  }

 private:
  struct Cache {
    std::vector<Mat<S>> tokens, q, k, v;
    std::vector<std::vector<Mat<S>>> attn;  // attn[i][j]: b x 1
  };

  int dim_, n_tokens_;
  Mat<S> wq_, wk_, wv_, gwq_, gwk_, gwv_;
  Cache cache_;
};

}  // namespace lae::nn
