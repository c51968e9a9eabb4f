#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "lae/common.hpp"

namespace lae {

static_assert(std::endian::native == std::endian::little,
              "binary containers assume a little-endian host");

// Append-only byte sink for the repo's binary containers. All multi-byte
// values little-endian; layouts documented in the README.
class ByteWriter {
 public:
  void put_bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  void put_u8(std::uint8_t v) { put_bytes(&v, 1); }
  void put_u32(std::uint32_t v) { put_bytes(&v, 4); }
  void put_u64(std::uint64_t v) { put_bytes(&v, 8); }
  void put_i64(std::int64_t v) { put_bytes(&v, 8); }
  void put_f32(float v) { put_bytes(&v, 4); }
  void put_f64(double v) { put_bytes(&v, 8); }
  void put_str(const std::string& s) {
    put_u32(static_cast<std::uint32_t>(s.size()));
    put_bytes(s.data(), s.size());
  }
  template <typename T>
  void put_pod_vec(const std::vector<T>& v) {
    put_u64(v.size());
    put_bytes(v.data(), v.size() * sizeof(T));
  }

  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t>&& take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}
  explicit ByteReader(const std::vector<std::uint8_t>& v)
      : ByteReader(v.data(), v.size()) {}

  void get_bytes(void* out, std::size_t n) {
    if (pos_ + n > size_) fail(ErrorKind::IoError, "truncated binary payload");
    std::memcpy(out, data_ + pos_, n);
    pos_ += n;
  }
  std::uint8_t get_u8() { return get<std::uint8_t>(); }
  std::uint32_t get_u32() { return get<std::uint32_t>(); }
  std::uint64_t get_u64() { return get<std::uint64_t>(); }
  std::int64_t get_i64() { return get<std::int64_t>(); }
  float get_f32() { return get<float>(); }
  double get_f64() { return get<double>(); }
  std::string get_str() {
    std::uint32_t n = get_u32();
    if (pos_ + n > size_) fail(ErrorKind::IoError, "truncated string");
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  template <typename T>
  std::vector<T> get_pod_vec() {
    std::uint64_t n = get_u64();
    if (pos_ + n * sizeof(T) > size_) fail(ErrorKind::IoError, "truncated vector");
    std::vector<T> v(n);
    get_bytes(v.data(), n * sizeof(T));
    return v;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  template <typename T>
  T get() {
    T v;
    get_bytes(&v, sizeof(T));
    return v;
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const void* data, std::size_t n);
inline void write_file_bytes(const std::string& path,
                             const std::vector<std::uint8_t>& v) {
  write_file_bytes(path, v.data(), v.size());
}
void write_file_text(const std::string& path, const std::string& text);
std::string read_file_text(const std::string& path);

}  // namespace lae
