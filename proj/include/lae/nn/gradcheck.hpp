#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "lae/nn/matrix.hpp"

namespace lae::nn {

// Central finite differences against analytic gradients.
//   loss_fn:  pure forward pass returning the scalar loss (no grad side
//             effects needed).
//   grad_fn:  zeroes grads, runs forward+backward, leaves analytic grads in
//             the parameter refs.
// Returns max over parameter entries of
//   |analytic - numeric| / max(|analytic|, |numeric|, floor).
// Stochastic layers must be frozen (dropout mask reuse) before calling.
template <class S>
S grad_check(std::vector<ParamRef<S>>& params,
             const std::function<S()>& loss_fn,
             const std::function<void()>& grad_fn, S eps = S(1e-5),
             S floor = S(1e-8)) {
  grad_fn();
  std::vector<Mat<S>> analytic;
  analytic.reserve(params.size());
  for (auto& p : params)
    analytic.push_back(p.grad ? *p.grad : Mat<S>());

  S worst = S(0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    if (!p.trainable || !p.grad) continue;
    for (Eigen::Index r = 0; r < p.value->rows(); ++r) {
      for (Eigen::Index c = 0; c < p.value->cols(); ++c) {
        const S saved = (*p.value)(r, c);
        (*p.value)(r, c) = saved + eps;
        const S up = loss_fn();
        (*p.value)(r, c) = saved - eps;
        const S down = loss_fn();
        (*p.value)(r, c) = saved;
        const S numeric = (up - down) / (S(2) * eps);
        const S a = analytic[i](r, c);
        const S denom = std::max({std::abs(a), std::abs(numeric), floor});
        worst = std::max(worst, std::abs(a - numeric) / denom);
      }
    }
  }
  return worst;
}

}  // namespace lae::nn
