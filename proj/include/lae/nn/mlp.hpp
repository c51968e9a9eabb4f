#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lae/nn/layers.hpp"

namespace lae::nn {

enum class LayerKind { dense, batchnorm, relu, tanh, dropout };

struct LayerSpec {
  LayerKind kind;
  int in_dim = 0;   // dense only
  int out_dim = 0;  // dense only
  double rate = 0.0;  // dropout only

  static LayerSpec make_dense(int in, int out) {
    return {LayerKind::dense, in, out, 0.0};
  }
  static LayerSpec make_batchnorm() { return {LayerKind::batchnorm}; }
  static LayerSpec make_relu() { return {LayerKind::relu}; }
  static LayerSpec make_tanh() { return {LayerKind::tanh}; }
  static LayerSpec make_dropout(double rate) {
    return {LayerKind::dropout, 0, 0, rate};
  }
};

// Sequential stack. Composition is validated at build time: the width
// flowing between consecutive layers must chain.
template <class S>
class Mlp {
 public:
  Mlp() = default;

  Mlp(const std::vector<LayerSpec>& specs, int input_dim, std::uint64_t seed)
      : in_dim_(input_dim) {
    Rng rng(seed);
    int width = input_dim;
    int dropout_index = 0;
    for (const auto& spec : specs) {
      switch (spec.kind) {
        case LayerKind::dense:
          if (spec.in_dim != width)
            fail(ErrorKind::DimensionMismatch,
                 "dense layer expects width " + std::to_string(spec.in_dim) +
                     " but the stack provides " + std::to_string(width));
          layers_.push_back(std::make_unique<Dense<S>>(spec.in_dim,
                                                       spec.out_dim, rng));
          width = spec.out_dim;
          break;
        case LayerKind::batchnorm:
          layers_.push_back(std::make_unique<BatchNorm<S>>(width));
          break;
        case LayerKind::relu:
          layers_.push_back(std::make_unique<Relu<S>>());
          break;
        case LayerKind::tanh:
          layers_.push_back(std::make_unique<TanhLayer<S>>());
          break;
        case LayerKind::dropout: {
          auto d = std::make_unique<Dropout<S>>(
              spec.rate, Rng::derive_seed(seed, 1000 + dropout_index++));
          dropouts_.push_back(d.get());
          layers_.push_back(std::move(d));
          break;
        }
      }
    }
    out_dim_ = width;
  }

  Mat<S> forward(const Mat<S>& x, bool train) {
    if (x.cols() != in_dim_)
      fail(ErrorKind::DimensionMismatch,
           "mlp input width " + std::to_string(x.cols()) + ", expected " +
               std::to_string(in_dim_));
    Mat<S> h = x;
    for (auto& l : layers_) h = l->forward(h, train);
    return h;
  }

  Mat<S> backward(const Mat<S>& dy) {
    Mat<S> g = dy;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it)
      g = (*it)->backward(g);
    return g;
  }

  // Thread-safe frozen inference (no caches touched).
  Mat<S> eval(const Mat<S>& x) const {
    if (x.cols() != in_dim_)
      fail(ErrorKind::DimensionMismatch, "mlp input width");
    Mat<S> h = x;
    for (const auto& l : layers_) h = l->eval(h);
    return h;
  }

  void append_params(std::vector<ParamRef<S>>& out, const std::string& prefix) {
    for (std::size_t i = 0; i < layers_.size(); ++i)
      layers_[i]->append_params(out, prefix + ".l" + std::to_string(i));
  }

  std::vector<ParamRef<S>> params() {
    std::vector<ParamRef<S>> out;
    append_params(out, "mlp");
    return out;
  }

  void set_dropout_reuse(bool reuse) {
    for (auto* d : dropouts_) d->set_reuse_mask(reuse);
  }

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<std::unique_ptr<Layer<S>>> layers_;
  std::vector<Dropout<S>*> dropouts_;
};

}  // namespace lae::nn
