#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "lae/common.hpp"
#include "lae/nn/matrix.hpp"
#include "lae/rng.hpp"

namespace lae::nn {

template <class S>
void he_uniform_init(Mat<S>& w, int fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / fan_in);
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      w(r, c) = static_cast<S>(rng.uniform(-bound, bound));
}

template <class S>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual Mat<S> forward(const Mat<S>& x, bool train) = 0;
  // Consumes the cache from the matching forward. Parameter gradients
  // accumulate; call zero_grads (via optimizer) between steps.
  virtual Mat<S> backward(const Mat<S>& dy) = 0;
  // Cache-free eval-mode pass; const so frozen nets are safe to call from
  // many threads at once.
  virtual Mat<S> eval(const Mat<S>& x) const = 0;
  virtual void append_params(std::vector<ParamRef<S>>& out,
                             const std::string& prefix) {}
  virtual int out_dim(int in_dim) const { return in_dim; }

 protected:
  void require(bool cond, const char* what) const {
    if (!cond) fail(ErrorKind::DimensionMismatch, what);
  }
  void require_cache(bool cond) const {
    if (!cond) fail(ErrorKind::StaleCache, "backward without matching forward");
  }
};

template <class S>
class Dense : public Layer<S> {
 public:
  Dense(int in, int out, Rng& rng) : in_(in), out_(out) {
    w_.setZero(in, out);
    he_uniform_init(w_, in, rng);
    b_.setZero(1, out);
    gw_.setZero(in, out);
    gb_.setZero(1, out);
  }

  Mat<S> forward(const Mat<S>& x, bool) override {
    this->require(x.cols() == in_, "dense input width");
    x_ = x;
    return (x * w_).rowwise() + b_.row(0);
  }

  Mat<S> eval(const Mat<S>& x) const override {
    this->require(x.cols() == in_, "dense input width");
    return (x * w_).rowwise() + b_.row(0);
  }

  Mat<S> backward(const Mat<S>& dy) override {
    this->require_cache(x_.rows() == dy.rows());
    this->require(dy.cols() == out_, "dense grad width");
    gw_ += x_.transpose() * dy;
    gb_.row(0) += dy.colwise().sum();
    return dy * w_.transpose();
  }

  void append_params(std::vector<ParamRef<S>>& out,
                     const std::string& prefix) override {
    out.push_back({prefix + ".w", &w_, &gw_, true});
    out.push_back({prefix + ".b", &b_, &gb_, true});
  }

  int out_dim(int) const override { return out_; }

  Mat<S>& weight() { return w_; }
  Mat<S>& bias() { return b_; }

 private:
  int in_, out_;
  Mat<S> w_, b_, gw_, gb_, x_;
};

template <class S>
class Relu : public Layer<S> {
 public:
  Mat<S> forward(const Mat<S>& x, bool) override {
    mask_ = (x.array() > S(0)).template cast<S>();
    return x.cwiseMax(S(0));
  }
  Mat<S> eval(const Mat<S>& x) const override { return x.cwiseMax(S(0)); }
  Mat<S> backward(const Mat<S>& dy) override {
    this->require_cache(mask_.rows() == dy.rows() && mask_.cols() == dy.cols());
    return dy.cwiseProduct(mask_);
  }

 private:
  Mat<S> mask_;
};

template <class S>
class TanhLayer : public Layer<S> {
 public:
  Mat<S> forward(const Mat<S>& x, bool) override {
    y_ = x.array().tanh().matrix();
    return y_;
  }
  Mat<S> eval(const Mat<S>& x) const override {
    return x.array().tanh().matrix();
  }
  Mat<S> backward(const Mat<S>& dy) override {
    this->require_cache(y_.rows() == dy.rows() && y_.cols() == dy.cols());
    return dy.cwiseProduct(
        (Mat<S>::Ones(y_.rows(), y_.cols()) - y_.cwiseProduct(y_)));
  }

 private:
  Mat<S> y_;
};

// Inverted dropout: train-mode activations are scaled by 1/(1-rate) so the
// eval path is the identity. reuse_mask keeps the previous mask alive for
// finite-difference checking.
template <class S>
class Dropout : public Layer<S> {
 public:
  Dropout(double rate, std::uint64_t seed) : rate_(rate), rng_(seed) {}

  Mat<S> forward(const Mat<S>& x, bool train) override {
    if (!train || rate_ <= 0.0) {
      mask_.resize(0, 0);
      eval_rows_ = x.rows();
      eval_cols_ = x.cols();
      return x;
    }
    if (!(reuse_mask_ && mask_.rows() == x.rows() && mask_.cols() == x.cols())) {
      mask_.resize(x.rows(), x.cols());
      const S keep_scale = static_cast<S>(1.0 / (1.0 - rate_));
      for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (Eigen::Index c = 0; c < x.cols(); ++c)
          mask_(r, c) = rng_.bernoulli(rate_) ? S(0) : keep_scale;
    }
    return x.cwiseProduct(mask_);
  }

  Mat<S> backward(const Mat<S>& dy) override {
    if (mask_.size() == 0) {
      this->require_cache(eval_rows_ == dy.rows() && eval_cols_ == dy.cols());
      return dy;
    }
    this->require_cache(mask_.rows() == dy.rows() && mask_.cols() == dy.cols());
    return dy.cwiseProduct(mask_);
  }

  Mat<S> eval(const Mat<S>& x) const override { return x; }

  void set_reuse_mask(bool reuse) { reuse_mask_ = reuse; }

 private:
  double rate_;
  Rng rng_;
  Mat<S> mask_;
  Eigen::Index eval_rows_ = 0, eval_cols_ = 0;
  bool reuse_mask_ = false;
};

// Per-feature batch normalization. Train mode normalizes with batch
// statistics (biased variance) and maintains running estimates; eval mode is
// the frozen affine map using running statistics.
template <class S>
class BatchNorm : public Layer<S> {
 public:
  explicit BatchNorm(int dim, double momentum = 0.9, double eps = 1e-5)
      : dim_(dim), momentum_(momentum), eps_(static_cast<S>(eps)) {
    gamma_.setOnes(1, dim);
    beta_.setZero(1, dim);
    g_gamma_.setZero(1, dim);
    g_beta_.setZero(1, dim);
    running_mean_.setZero(1, dim);
    running_var_.setOnes(1, dim);
  }

  Mat<S> forward(const Mat<S>& x, bool train) override {
    this->require(x.cols() == dim_, "batchnorm width");
    train_mode_ = train;
    if (!train) {
      eval_rows_ = x.rows();
      Mat<S> inv_std =
          (running_var_.array() + eps_).sqrt().inverse().matrix();
      Mat<S> xc = x.rowwise() - running_mean_.row(0);
      Mat<S> xhat = xc.array().rowwise() * inv_std.row(0).array();
      return (xhat.array().rowwise() * gamma_.row(0).array()).rowwise() +
             beta_.row(0).array();
    }
    const S inv_b = S(1) / static_cast<S>(x.rows());
    mean_ = x.colwise().sum() * inv_b;
    xc_ = x.rowwise() - mean_.row(0);
    var_ = xc_.cwiseProduct(xc_).colwise().sum() * inv_b;
    inv_std_ = (var_.array() + eps_).sqrt().inverse().matrix();
    xhat_ = xc_.array().rowwise() * inv_std_.row(0).array();
    running_mean_ = running_mean_ * static_cast<S>(momentum_) +
                    mean_ * static_cast<S>(1.0 - momentum_);
    running_var_ = running_var_ * static_cast<S>(momentum_) +
                   var_ * static_cast<S>(1.0 - momentum_);
    return (xhat_.array().rowwise() * gamma_.row(0).array()).rowwise() +
           beta_.row(0).array();
  }

  Mat<S> eval(const Mat<S>& x) const override {
    this->require(x.cols() == dim_, "batchnorm width");
    Mat<S> inv_std = (running_var_.array() + eps_).sqrt().inverse().matrix();
    Mat<S> xc = x.rowwise() - running_mean_.row(0);
    Mat<S> xhat = xc.array().rowwise() * inv_std.row(0).array();
    return (xhat.array().rowwise() * gamma_.row(0).array()).rowwise() +
           beta_.row(0).array();
  }

  Mat<S> backward(const Mat<S>& dy) override {
    this->require(dy.cols() == dim_, "batchnorm grad width");
    if (!train_mode_) {
      this->require_cache(eval_rows_ == dy.rows());
      Mat<S> inv_std =
          (running_var_.array() + eps_).sqrt().inverse().matrix();
      return dy.array().rowwise() *
             (gamma_.row(0).array() * inv_std.row(0).array());
    }
    this->require_cache(xhat_.rows() == dy.rows());
    const Eigen::Index b = dy.rows();
    const S inv_b = S(1) / static_cast<S>(b);
    g_gamma_.row(0) += dy.cwiseProduct(xhat_).colwise().sum();
    g_beta_.row(0) += dy.colwise().sum();

    Mat<S> dxhat = dy.array().rowwise() * gamma_.row(0).array();
    Mat<S> sum_dxhat = dxhat.colwise().sum();                  // 1 x d
    Mat<S> sum_dxhat_xhat = dxhat.cwiseProduct(xhat_).colwise().sum();
    // dx = inv_std/B * (B*dxhat - sum(dxhat) - xhat * sum(dxhat*xhat))
    Mat<S> dx = dxhat * static_cast<S>(b);
    dx = dx.rowwise() - sum_dxhat.row(0);
    dx -= xhat_.array().rowwise() * sum_dxhat_xhat.row(0).array();
    dx = dx.array().rowwise() * inv_std_.row(0).array();
    return dx * inv_b;
  }

  void append_params(std::vector<ParamRef<S>>& out,
                     const std::string& prefix) override {
    out.push_back({prefix + ".gamma", &gamma_, &g_gamma_, true});
    out.push_back({prefix + ".beta", &beta_, &g_beta_, true});
    out.push_back({prefix + ".running_mean", &running_mean_, nullptr, false});
    out.push_back({prefix + ".running_var", &running_var_, nullptr, false});
  }

 private:
  int dim_;
  double momentum_;
  S eps_;
  bool train_mode_ = false;
  Eigen::Index eval_rows_ = 0;
  Mat<S> gamma_, beta_, g_gamma_, g_beta_;
  Mat<S> running_mean_, running_var_;
  Mat<S> mean_, var_, inv_std_, xc_, xhat_;
};

}  // namespace lae::nn
