#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lae {

// Error taxonomy shared by all modules. The CLI maps kinds to stable exit
// codes; tests match on kind.
enum class ErrorKind {
  PlacementFailure,
  DimensionMismatch,
  StaleCache,
  ChecksumMismatch,
  VersionMismatch,
  EmptyDataset,
  SingleClassDataset,
  ConvergenceFailure,
  WrongHistoryLength,
  EmptyIndex,
  FrozenModel,
  FrozenHashMismatch,
  InsufficientSeeds,
  ZeroVariance,
  ConfigError,
  MissingArtifact,
  IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm_sq()); }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Scales v so its Euclidean norm does not exceed max_norm; direction kept.
inline Vec2 clamp_norm(const Vec2& v, double max_norm) {
  double n = v.norm();
  if (n > max_norm && n > 0.0) return v * (max_norm / n);
  return v;
}

}  // namespace lae
