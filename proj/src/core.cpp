#include <fstream>
#include <sstream>

#include "lae/binio.hpp"
#include "lae/common.hpp"
#include "lae/sha256.hpp"

namespace lae {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PlacementFailure: return "PlacementFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::StaleCache: return "StaleCache";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::SingleClassDataset: return "SingleClassDataset";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::WrongHistoryLength: return "WrongHistoryLength";
    case ErrorKind::EmptyIndex: return "EmptyIndex";
    case ErrorKind::FrozenModel: return "FrozenModel";
    case ErrorKind::FrozenHashMismatch: return "FrozenHashMismatch";
    case ErrorKind::InsufficientSeeds: return "InsufficientSeeds";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingArtifact: return "MissingArtifact";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                 std::istreambuf_iterator<char>());
  return data;
}

void write_file_bytes(const std::string& path, const void* data, std::size_t n) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!f) fail(ErrorKind::IoError, "short write to " + path);
}

void write_file_text(const std::string& path, const std::string& text) {
  write_file_bytes(path, text.data(), text.size());
}

std::string read_file_text(const std::string& path) {
  auto b = read_file_bytes(path);
  return std::string(b.begin(), b.end());
}

std::string sha256_file_hex(const std::string& path) {
  auto bytes = read_file_bytes(path);
  return Sha256::hex(bytes.data(), bytes.size());
}

}  // namespace lae
