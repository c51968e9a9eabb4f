#include "lae/nn/weight_store.hpp"

#include "lae/binio.hpp"
#include "lae/sha256.hpp"

namespace lae::nn {

namespace {
constexpr std::uint32_t kWeightMagic = 0x5745414c;  // "LAEW"
}

std::vector<std::uint8_t> WeightStore::to_bytes() const {
  ByteWriter w;
  w.put_u32(kWeightMagic);
  w.put_u32(version);
  w.put_u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    w.put_str(e.name);
    w.put_u8(0);  // dtype f32
    w.put_u32(e.rows);
    w.put_u32(e.cols);
    w.put_bytes(e.data.data(), e.data.size() * sizeof(float));
  }
  std::uint64_t checksum =
      Sha256::checksum64(w.bytes().data(), w.bytes().size());
  w.put_u64(checksum);
  return w.take();
}

WeightStore WeightStore::from_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 20) fail(ErrorKind::IoError, "weight store too small");
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + bytes.size() - 8, 8);
  std::uint64_t computed = Sha256::checksum64(bytes.data(), bytes.size() - 8);
  if (stored != computed)
    fail(ErrorKind::ChecksumMismatch, "weight store checksum mismatch");

  ByteReader r(bytes.data(), bytes.size() - 8);
  if (r.get_u32() != kWeightMagic)
    fail(ErrorKind::IoError, "not a weight store");
  WeightStore store;
  store.version = r.get_u32();
  if (store.version != kVersion)
    fail(ErrorKind::VersionMismatch,
         "weight store version " + std::to_string(store.version) +
             ", expected " + std::to_string(kVersion));
  std::uint32_t count = r.get_u32();
  store.entries.resize(count);
  for (auto& e : store.entries) {
    e.name = r.get_str();
    std::uint8_t dtype = r.get_u8();
    if (dtype != 0) fail(ErrorKind::IoError, "unknown tensor dtype");
    e.rows = r.get_u32();
    e.cols = r.get_u32();
    e.data.resize(static_cast<std::size_t>(e.rows) * e.cols);
    r.get_bytes(e.data.data(), e.data.size() * sizeof(float));
  }
  return store;
}

void WeightStore::save(const std::string& path) const {
  write_file_bytes(path, to_bytes());
}

WeightStore WeightStore::load(const std::string& path) {
  return from_bytes(read_file_bytes(path));
}

}  // namespace lae::nn
