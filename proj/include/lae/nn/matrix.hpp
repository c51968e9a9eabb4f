#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace lae::nn {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Batch convention: rows are samples, columns are features.

template <class S>
struct ParamRef {
  std::string name;
  Mat<S>* value = nullptr;
  Mat<S>* grad = nullptr;  // null for buffers (e.g. batchnorm running stats)
  bool trainable = true;
};

template <class S>
std::size_t param_count(const std::vector<ParamRef<S>>& params,
                        bool trainable_only = true) {
  std::size_t n = 0;
  for (const auto& p : params)
    if (!trainable_only || p.trainable) n += static_cast<std::size_t>(p.value->size());
  return n;
}

}  // namespace lae::nn
