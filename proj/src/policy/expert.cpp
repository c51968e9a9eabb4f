#include "lae/policy/expert.hpp"

#include <algorithm>
#include <cmath>

namespace lae::policy {

namespace {

// Khatib-style barrier: zero at the cutoff, superlinear as s -> 0.
double barrier(double s, double cutoff) {
  if (s >= cutoff) return 0.0;
  return (1.0 / s - 1.0 / cutoff) / (s * s);
}

}  // namespace

Vec2 expert_action(const Observation& obs, const ExpertGains& gains) {
  const Vec2 to_goal{obs.self_part[0], obs.self_part[1]};
  const Vec2 vel{obs.self_part[2], obs.self_part[3]};

  Vec2 a = to_goal * gains.k_goal - vel * gains.k_damp;

  // Neighbor repulsion, with a fixed tangential bias so symmetric head-on
  // encounters resolve instead of stalling.
  for (int slot = 0; slot < kNeighborCount; ++slot) {
    const double* f = obs.neigh_part.data() + slot * kNeighFeat;
    const Vec2 dp{f[0], f[1]};
    const double d = dp.norm();
    if (d <= 1e-9 || d >= gains.neigh_range) continue;
    const double mag = gains.k_neigh * barrier(d, gains.neigh_range);
    const Vec2 away = dp * (-1.0 / d);
    const Vec2 side{-away.y, away.x};
    a += (away + side * 0.3) * mag;
  }

  // Obstacle repulsion: direction from the SDF grid gradient (central
  // differences), magnitude from the center sample. Samples at the clamp
  // value carry no information and stay inactive.
  const auto& g = obs.obst_part;
  const double center = g[4];
  if (center < kSdfClamp) {
    const double gx = (g[5] - g[3]) / (2.0 * kSdfHalfExtent);
    const double gy = (g[7] - g[1]) / (2.0 * kSdfHalfExtent);
    const double gn = std::sqrt(gx * gx + gy * gy);
    if (gn > 1e-9) {
      const double s = std::max(center, 0.05);
      const double mag = gains.k_obst * barrier(s, kSdfClamp);
      a += Vec2{gx / gn, gy / gn} * mag;
    }
  }

  return clamp_norm(a, gains.a_max);
}

}  // namespace lae::policy
