#pragma once

#include <array>
#include <cstddef>

namespace lae {

// The edited object: a d=30 policy activation with a fixed partition.
// Z1 layout: [0,10) self embedding, [10,20) neighbor, [20,30) obstacle.
// Z2 shares the dimension but has no meaningful partition.
inline constexpr int kLatentDim = 30;
inline constexpr int kSelfSliceEnd = 10;
inline constexpr int kNeighSliceEnd = 20;

using Latent = std::array<float, kLatentDim>;

}  // namespace lae
