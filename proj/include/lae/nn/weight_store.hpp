#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lae/common.hpp"
#include "lae/nn/matrix.hpp"

namespace lae::nn {

// Portable container of named tensors. Binary layout (little-endian):
//   magic "LAEW" | u32 version | u32 tensor count |
//   per tensor: name | u8 dtype (0=f32) | u32 rows | u32 cols | payload |
//   u64 checksum (first 8 bytes of SHA-256 over everything before it)
// Values are stored row-major as float32; round trips are bit-identical.
struct WeightStore {
  static constexpr std::uint32_t kVersion = 1;

  struct Entry {
    std::string name;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<float> data;  // row-major
  };

  std::uint32_t version = kVersion;
  std::vector<Entry> entries;

  const Entry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }

  std::vector<std::uint8_t> to_bytes() const;
  static WeightStore from_bytes(const std::vector<std::uint8_t>& bytes);
  void save(const std::string& path) const;
  static WeightStore load(const std::string& path);
};

// Snapshot every parameter (buffers included) in registration order.
template <class S>
WeightStore save_weights(const std::vector<ParamRef<S>>& params) {
  WeightStore store;
  for (const auto& p : params) {
    WeightStore::Entry e;
    e.name = p.name;
    e.rows = static_cast<std::uint32_t>(p.value->rows());
    e.cols = static_cast<std::uint32_t>(p.value->cols());
    e.data.reserve(static_cast<std::size_t>(p.value->size()));
    for (Eigen::Index r = 0; r < p.value->rows(); ++r)
      for (Eigen::Index c = 0; c < p.value->cols(); ++c)
        e.data.push_back(static_cast<float>((*p.value)(r, c)));
    store.entries.push_back(std::move(e));
  }
  return store;
}

// Restores parameters by name; every parameter must be present with the
// right shape (DimensionMismatch otherwise).
template <class S>
void load_weights(const WeightStore& store, std::vector<ParamRef<S>>& params) {
  for (auto& p : params) {
    const auto* e = store.find(p.name);
    if (!e)
      fail(ErrorKind::MissingArtifact, "weight store lacks tensor " + p.name);
    if (e->rows != static_cast<std::uint32_t>(p.value->rows()) ||
        e->cols != static_cast<std::uint32_t>(p.value->cols()))
      fail(ErrorKind::DimensionMismatch, "tensor shape mismatch for " + p.name);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < p.value->rows(); ++r)
      for (Eigen::Index c = 0; c < p.value->cols(); ++c)
        (*p.value)(r, c) = static_cast<S>(e->data[idx++]);
  }
}

}  // namespace lae::nn
