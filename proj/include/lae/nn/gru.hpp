#pragma once

#include <vector>

#include "lae/nn/layers.hpp"

namespace lae::nn {

// Standard GRU gating:
//   z = sigmoid(x Wz + h Uz + bz)
//   r = sigmoid(x Wr + h Ur + br)
//   c = tanh(x Wh + (r.h) Uh + bh)
//   h' = (1 - z).h + z.c
// step() caches per-call state on an internal stack so a full unrolled
// sequence can be backpropagated through time with backward_step() calls in
// reverse order.
template <class S>
class GruCell {
 public:
  GruCell(int input_dim, int hidden_dim, Rng& rng)
      : in_(input_dim), hid_(hidden_dim) {
    auto init = [&](Mat<S>& m, int rows, int cols, int fan_in) {
      m.setZero(rows, cols);
      he_uniform_init(m, fan_in, rng);
    };
    init(wz_, in_, hid_, in_);
    init(wr_, in_, hid_, in_);
    init(wh_, in_, hid_, in_);
    init(uz_, hid_, hid_, hid_);
    init(ur_, hid_, hid_, hid_);
    init(uh_, hid_, hid_, hid_);
    bz_.setZero(1, hid_);
    br_.setZero(1, hid_);
    bh_.setZero(1, hid_);
    gwz_.setZero(in_, hid_);
    gwr_.setZero(in_, hid_);
    gwh_.setZero(in_, hid_);
    guz_.setZero(hid_, hid_);
    gur_.setZero(hid_, hid_);
    guh_.setZero(hid_, hid_);
    gbz_.setZero(1, hid_);
    gbr_.setZero(1, hid_);
    gbh_.setZero(1, hid_);
  }

  int input_dim() const { return in_; }
  int hidden_dim() const { return hid_; }

  Mat<S> step(const Mat<S>& h_prev, const Mat<S>& x) {
    if (x.cols() != in_)
      fail(ErrorKind::DimensionMismatch, "gru input width");
    if (h_prev.cols() != hid_ || h_prev.rows() != x.rows())
      fail(ErrorKind::DimensionMismatch, "gru hidden shape");
    StepCache c;
    c.x = x;
    c.h_prev = h_prev;
    c.z = sigmoid(((x * wz_ + h_prev * uz_).rowwise() + bz_.row(0)).eval());
    c.r = sigmoid(((x * wr_ + h_prev * ur_).rowwise() + br_.row(0)).eval());
    c.rh = c.r.cwiseProduct(h_prev);
    c.cand =
        ((x * wh_ + c.rh * uh_).rowwise() + bh_.row(0)).array().tanh().matrix();
    Mat<S> h = (Mat<S>::Ones(c.z.rows(), c.z.cols()) - c.z)
                   .cwiseProduct(h_prev) +
               c.z.cwiseProduct(c.cand);
    stack_.push_back(std::move(c));
    return h;
  }

  Mat<S> step_eval(const Mat<S>& h_prev, const Mat<S>& x) const {
    if (x.cols() != in_ || h_prev.cols() != hid_ || h_prev.rows() != x.rows())
      fail(ErrorKind::DimensionMismatch, "gru eval shape");
    Mat<S> z = sigmoid(((x * wz_ + h_prev * uz_).rowwise() + bz_.row(0)).eval());
    Mat<S> r = sigmoid(((x * wr_ + h_prev * ur_).rowwise() + br_.row(0)).eval());
    Mat<S> cand = ((x * wh_ + r.cwiseProduct(h_prev) * uh_).rowwise() + bh_.row(0))
                      .array()
                      .tanh()
                      .matrix();
    return (Mat<S>::Ones(z.rows(), z.cols()) - z).cwiseProduct(h_prev) +
           z.cwiseProduct(cand);
  }

  // Pops one cached step. Returns (dh_prev, dx); parameter grads accumulate.
  std::pair<Mat<S>, Mat<S>> backward_step(const Mat<S>& dh) {
    if (stack_.empty())
      fail(ErrorKind::StaleCache, "gru backward without cached step");
    StepCache c = std::move(stack_.back());
    stack_.pop_back();

    Mat<S> ones = Mat<S>::Ones(dh.rows(), dh.cols());
    Mat<S> dc = dh.cwiseProduct(c.z);
    Mat<S> dz = dh.cwiseProduct(c.cand - c.h_prev);
    Mat<S> dh_prev = dh.cwiseProduct(ones - c.z);

    Mat<S> a_c = dc.cwiseProduct(ones - c.cand.cwiseProduct(c.cand));
    gwh_ += c.x.transpose() * a_c;
    guh_ += c.rh.transpose() * a_c;
    gbh_.row(0) += a_c.colwise().sum();
    Mat<S> d_rh = a_c * uh_.transpose();
    Mat<S> dr = d_rh.cwiseProduct(c.h_prev);
    dh_prev += d_rh.cwiseProduct(c.r);

    Mat<S> a_z = dz.cwiseProduct(c.z).cwiseProduct(ones - c.z);
    gwz_ += c.x.transpose() * a_z;
    guz_ += c.h_prev.transpose() * a_z;
    gbz_.row(0) += a_z.colwise().sum();
    dh_prev += a_z * uz_.transpose();

    Mat<S> a_r = dr.cwiseProduct(c.r).cwiseProduct(ones - c.r);
    gwr_ += c.x.transpose() * a_r;
    gur_ += c.h_prev.transpose() * a_r;
    gbr_.row(0) += a_r.colwise().sum();
    dh_prev += a_r * ur_.transpose();

    Mat<S> dx = a_z * wz_.transpose() + a_r * wr_.transpose() +
                a_c * wh_.transpose();
    return {dh_prev, dx};
  }

  void clear_cache() { stack_.clear(); }

  void append_params(std::vector<ParamRef<S>>& out, const std::string& p) {
    out.push_back({p + ".wz", &wz_, &gwz_, true});
    out.push_back({p + ".wr", &wr_, &gwr_, true});
    out.push_back({p + ".wh", &wh_, &gwh_, true});
    out.push_back({p + ".uz", &uz_, &guz_, true});
    out.push_back({p + ".ur", &ur_, &gur_, true});
    out.push_back({p + ".uh", &uh_, &guh_, true});
    out.push_back({p + ".bz", &bz_, &gbz_, true});
    out.push_back({p + ".br", &br_, &gbr_, true});
    out.push_back({p + ".bh", &bh_, &gbh_, true});
  }

 private:
  static Mat<S> sigmoid(const Mat<S>& x) {
    return ((-x.array()).exp() + S(1)).inverse().matrix();
  }

  struct StepCache {
    Mat<S> x, h_prev, z, r, rh, cand;
  };

  int in_, hid_;
  Mat<S> wz_, wr_, wh_, uz_, ur_, uh_, bz_, br_, bh_;
  Mat<S> gwz_, gwr_, gwh_, guz_, gur_, guh_, gbz_, gbr_, gbh_;
  std::vector<StepCache> stack_;
};

}  // namespace lae::nn
