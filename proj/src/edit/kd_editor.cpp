#include "lae/edit/kd_editor.hpp"

#include <algorithm>
#include <cmath>

namespace lae::edit {

namespace {
constexpr int kLeafSize = 16;
}

void KdTree::build(const float* points, int dim, const std::vector<int>& ids) {
  points_ = points;
  dim_ = dim;
  ids_ = ids;
  nodes_.clear();
  if (!ids_.empty()) build_node(0, static_cast<int>(ids_.size()), 0);
}

int KdTree::build_node(int begin, int end, int depth) {
  const int node_index = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  if (end - begin <= kLeafSize) {
    // Leaves keep ascending ids so first-wins tie-breaking is stable.
    std::sort(ids_.begin() + begin, ids_.begin() + end);
    nodes_[node_index].begin = begin;
    nodes_[node_index].end = end;
    return node_index;
  }

  // Split along the widest-spread dimension at the median.
  int best_dim = depth % dim_;
  float best_spread = -1.0f;
  for (int d = 0; d < dim_; ++d) {
    float lo = points_[std::size_t(ids_[begin]) * dim_ + d];
    float hi = lo;
    for (int i = begin + 1; i < end; ++i) {
      float v = points_[std::size_t(ids_[i]) * dim_ + d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = d;
    }
  }
  const int mid = (begin + end) / 2;
  std::nth_element(ids_.begin() + begin, ids_.begin() + mid,
                   ids_.begin() + end, [&](int a, int b) {
                     float va = points_[std::size_t(a) * dim_ + best_dim];
                     float vb = points_[std::size_t(b) * dim_ + best_dim];
                     return va < vb || (va == vb && a < b);
                   });
  nodes_[node_index].split_dim = best_dim;
  nodes_[node_index].split_val =
      points_[std::size_t(ids_[mid]) * dim_ + best_dim];
  const int left = build_node(begin, mid, depth + 1);
  const int right = build_node(mid, end, depth + 1);
  nodes_[node_index].left = left;
  nodes_[node_index].right = right;
  return node_index;
}

void KdTree::search(int node, const float* query, double& best_d2,
                    int& best_id) const {
  const Node& nd = nodes_[node];
  if (nd.split_dim < 0) {
    for (int i = nd.begin; i < nd.end; ++i) {
      const int id = ids_[i];
      const float* p = points_ + std::size_t(id) * dim_;
      double d2 = 0.0;
      for (int d = 0; d < dim_; ++d) {
        const double diff = double(query[d]) - double(p[d]);
        d2 += diff * diff;
      }
      if (d2 < best_d2 || (d2 == best_d2 && id < best_id)) {
        best_d2 = d2;
        best_id = id;
      }
    }
    return;
  }
  const double delta = double(query[nd.split_dim]) - double(nd.split_val);
  const int near = delta < 0.0 ? nd.left : nd.right;
  const int far = delta < 0.0 ? nd.right : nd.left;
  search(near, query, best_d2, best_id);
  if (delta * delta <= best_d2) search(far, query, best_d2, best_id);
}

int KdTree::nearest(const float* query) const {
  if (ids_.empty()) return -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  int best_id = std::numeric_limits<int>::max();
  search(0, query, best_d2, best_id);
  return best_id;
}

int KdEditor::bucket_of_streak(int streak) const {
  const int est_ttc = std::max(streak, 0);
  return std::min(est_ttc / cfg.bucket_width, n_buckets() - 1);
}

Latent KdEditor::retrieve(const Latent& z, int ttc_bucket) const {
  if (keys_.empty()) fail(ErrorKind::EmptyIndex, "kd editor has no points");
  if (ttc_bucket < 0 || ttc_bucket >= n_buckets())
    fail(ErrorKind::ConfigError, "ttc bucket out of range");
  const KdTree& tree =
      buckets_[ttc_bucket].empty() ? global_ : buckets_[ttc_bucket];
  const int id = tree.nearest(z.data());
  Latent out;
  const float* p = payloads_.data() + std::size_t(id) * kLatentDim;
  std::copy(p, p + kLatentDim, out.begin());
  return out;
}

Latent KdEditor::produce(const std::vector<Latent>& history,
                         int unsafe_streak) const {
  check_history(history);
  return retrieve(history.back(), bucket_of_streak(unsafe_streak));
}

void KdEditor::build_trees() {
  const int n_buckets = cfg.H / cfg.bucket_width + 1;
  std::vector<std::vector<int>> bucket_ids(n_buckets);
  std::vector<int> all_ids(size());
  for (std::size_t i = 0; i < size(); ++i) {
    all_ids[i] = static_cast<int>(i);
    const int b = std::min(static_cast<int>(ttc_[i]) / cfg.bucket_width,
                           n_buckets - 1);
    bucket_ids[b].push_back(static_cast<int>(i));
  }
  buckets_.resize(n_buckets);
  for (int b = 0; b < n_buckets; ++b)
    buckets_[b].build(keys_.data(), kLatentDim, bucket_ids[b]);
  global_.build(keys_.data(), kLatentDim, all_ids);
}

std::unique_ptr<KdEditor> build_kd_editor(const data::CollectedDataset& data,
                                          const KdEditorConfig& cfg,
                                          data::LatentSource source) {
  if (data.windows.empty())
    fail(ErrorKind::EmptyIndex, "no collision-bearing windows to index");

  std::vector<float> keys, payloads;
  std::vector<std::int32_t> ttc;
  for (const auto& w : data.windows) {
    const int t_c = static_cast<int>(w.t_c);
    const int lo = std::max(t_c - cfg.H, static_cast<int>(w.span_start));
    for (int t = lo; t <= t_c; ++t) {
      const float* key = w.latent(source, t);
      keys.insert(keys.end(), key, key + kLatentDim);
      const float* pay = w.latent(source, std::min(t + cfg.m, t_c));
      payloads.insert(payloads.end(), pay, pay + kLatentDim);
      ttc.push_back(t_c - t);
    }
  }

  auto editor = std::make_unique<KdEditor>();
  editor->cfg = cfg;
  const std::size_t total = ttc.size();
  if (total > cfg.max_points) {
    const double stride = static_cast<double>(total) / cfg.max_points;
    for (std::size_t k = 0; k < cfg.max_points; ++k) {
      const std::size_t i = static_cast<std::size_t>(k * stride);
      editor->keys_.insert(editor->keys_.end(),
                           keys.begin() + i * kLatentDim,
                           keys.begin() + (i + 1) * kLatentDim);
      editor->payloads_.insert(editor->payloads_.end(),
                               payloads.begin() + i * kLatentDim,
                               payloads.begin() + (i + 1) * kLatentDim);
      editor->ttc_.push_back(ttc[i]);
    }
  } else {
    editor->keys_ = std::move(keys);
    editor->payloads_ = std::move(payloads);
    editor->ttc_ = std::move(ttc);
  }
  editor->build_trees();
  return editor;
}

}  // namespace lae::edit
