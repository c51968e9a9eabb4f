#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lae/data/datasets.hpp"
#include "lae/edit/editor.hpp"

namespace lae::edit {

// Exact nearest-neighbor k-d tree over fixed-dimension float points.
// Distances accumulate in double; ties break toward the lowest point index
// so results match a first-wins linear scan.
class KdTree {
 public:
  void build(const float* points, int dim, const std::vector<int>& ids);
  // Returns the id of the nearest stored point, or -1 if empty.
  int nearest(const float* query) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

 private:
  struct Node {
    int split_dim = -1;  // -1: leaf
    float split_val = 0;
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range into ids_
  };

  int build_node(int begin, int end, int depth);
  void search(int node, const float* query, double& best_d2, int& best_id)
      const;

  const float* points_ = nullptr;
  int dim_ = 0;
  std::vector<int> ids_;
  std::vector<Node> nodes_;
};

struct KdEditorConfig {
  int H = 250;
  int m = 10;
  int bucket_width = 25;           // steps per time-to-collision bucket
  std::size_t max_points = 60000;  // deterministic stride thinning above
};

// Retrieval editor: unsafe latents indexed by time-to-collision bucket; the
// stored replacement is the m-step-advanced latent clamped at the collision
// instant, mirroring the learned editor's target semantics. At inference the
// bucket comes from the consecutive-unsafe-flag count.
class KdEditor : public Editor {
 public:
  std::string kind() const override { return "kd"; }
  int history_len() const override { return 1; }
  Latent produce(const std::vector<Latent>& history,
                 int unsafe_streak) const override;

  // Exact nearest neighbor within the bucket's tree (global tree when the
  // bucket is empty). Throws EmptyIndex if there are no points at all.
  Latent retrieve(const Latent& z, int ttc_bucket) const;

  int n_buckets() const { return static_cast<int>(buckets_.size()); }
  int bucket_of_streak(int streak) const;
  std::size_t size() const { return keys_.size() / kLatentDim; }

  KdEditorConfig cfg;
  std::vector<float> keys_;      // size * kLatentDim
  std::vector<float> payloads_;  // size * kLatentDim
  std::vector<std::int32_t> ttc_;
  std::vector<KdTree> buckets_;
  KdTree global_;

  void build_trees();
};

std::unique_ptr<KdEditor> build_kd_editor(const data::CollectedDataset& data,
                                          const KdEditorConfig& cfg,
                                          data::LatentSource source);

}  // namespace lae::edit
