#pragma once

#include <cmath>
#include <vector>

#include "lae/nn/matrix.hpp"

namespace lae::nn {

// Adam with the usual constants (beta1=0.9, beta2=0.999, eps=1e-8).
// Moment buffers are keyed by position in the parameter list, which is
// stable because nets register parameters in construction order.
template <class S>
class Adam {
 public:
  explicit Adam(double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void zero_grads(std::vector<ParamRef<S>>& params) {
    for (auto& p : params)
      if (p.grad) p.grad->setZero();
  }

  void step(std::vector<ParamRef<S>>& params) {
    if (m_.empty()) {
      m_.resize(params.size());
      v_.resize(params.size());
      for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i].setZero(params[i].value->rows(), params[i].value->cols());
        v_[i].setZero(params[i].value->rows(), params[i].value->cols());
      }
    }
    ++t_;
    const S b1 = static_cast<S>(beta1_), b2 = static_cast<S>(beta2_);
    const S corr1 = static_cast<S>(1.0 - std::pow(beta1_, t_));
    const S corr2 = static_cast<S>(1.0 - std::pow(beta2_, t_));
    const S lr = static_cast<S>(lr_);
    const S eps = static_cast<S>(eps_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto& p = params[i];
      if (!p.trainable || !p.grad) continue;
      m_[i] = b1 * m_[i] + (S(1) - b1) * (*p.grad);
      v_[i] = (b2 * v_[i]).eval() +
              ((S(1) - b2) * p.grad->cwiseProduct(*p.grad)).eval();
      Mat<S> mhat = m_[i] / corr1;
      Mat<S> vhat = v_[i] / corr2;
      p.value->array() -= lr * mhat.array() / (vhat.array().sqrt() + eps);
    }
  }

  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<Mat<S>> m_, v_;
};

// Mean-over-batch losses; gradients match the reported scalar exactly.

// L = (1/B) * sum_b ||pred_b - target_b||^2, grad = 2 (pred - target) / B.
template <class S>
S mse_loss(const Mat<S>& pred, const Mat<S>& target, Mat<S>* grad) {
  Mat<S> diff = pred - target;
  if (grad) *grad = diff * (S(2) / static_cast<S>(pred.rows()));
  return diff.squaredNorm() / static_cast<S>(pred.rows());
}

// Weighted binary cross-entropy on logits (numerically stable form).
// L = sum_b w_b * [max(x,0) - x*y + log(1+exp(-|x|))] / sum_b w_b.
template <class S>
S weighted_bce_loss(const Mat<S>& logits, const Mat<S>& targets,
                    const Mat<S>& weights, Mat<S>* grad) {
  S wsum = weights.sum();
  S loss = S(0);
  if (grad) grad->setZero(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    S x = logits(i, 0), y = targets(i, 0), w = weights(i, 0);
    S l = std::max(x, S(0)) - x * y + std::log(S(1) + std::exp(-std::abs(x)));
    loss += w * l;
    if (grad) {
      S sig = S(1) / (S(1) + std::exp(-x));
      (*grad)(i, 0) = w * (sig - y) / wsum;
    }
  }
  return loss / wsum;
}

}  // namespace lae::nn
