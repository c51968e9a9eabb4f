#include "lae/sim/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lae/binio.hpp"
#include "lae/rng.hpp"

namespace lae::sim {

namespace {

constexpr std::uint32_t kScenarioMagic = 0x5345414c;  // "LAES"
constexpr std::uint32_t kScenarioVersion = 1;
constexpr int kAttemptsPerItem = 100000;

bool clear_of_obstacles(const Vec2& p, const std::vector<Vec2>& obstacles,
                        double min_dist) {
  for (const auto& c : obstacles)
    if (distance(p, c) <= min_dist) return false;
  return true;
}

bool clear_of_points(const Vec2& p, const std::vector<Vec2>& points,
                     double min_dist) {
  for (const auto& q : points)
    if (distance(p, q) < min_dist) return false;
  return true;
}

}  // namespace

Scenario generate_scenario(std::uint64_t seed, const ScenarioParams& params) {
  if (params.obstacle_density < 0.0 || params.obstacle_density > 0.5)
    fail(ErrorKind::ConfigError, "obstacle_density must be in [0, 0.5]");
  if (params.n_agents < 1) fail(ErrorKind::ConfigError, "n_agents must be >= 1");
  if (params.arena_side <= 4.0 * params.agent_radius)
    fail(ErrorKind::ConfigError, "arena_side too small for agents");

  Scenario s;
  s.seed = seed;
  s.params = params;
  Rng rng(seed);

  const double side = params.arena_side;
  const double r_obs = params.obstacle_radius;
  const double r_agent = params.agent_radius;
  const int n_obstacles = static_cast<int>(std::llround(
      params.obstacle_density * side * side /
      (std::numbers::pi * r_obs * r_obs)));

  // Obstacles keep a 2*r_agent surface gap between each other so an agent
  // body always fits between any two of them.
  const double obst_min_sep = 2.0 * r_obs + 2.0 * r_agent;
  for (int k = 0; k < n_obstacles; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kAttemptsPerItem; ++attempt) {
      Vec2 c{rng.uniform(r_obs, side - r_obs), rng.uniform(r_obs, side - r_obs)};
      if (clear_of_points(c, s.obstacles, obst_min_sep)) {
        s.obstacles.push_back(c);
        placed = true;
        break;
      }
    }
    if (!placed)
      fail(ErrorKind::PlacementFailure,
           "could not place obstacle " + std::to_string(k) + " of " +
               std::to_string(n_obstacles) + " (density too high)");
  }

  const double spawn_clearance = r_obs + r_agent;
  auto place_points = [&](const char* what) {
    std::vector<Vec2> points;
    for (int k = 0; k < params.n_agents; ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < kAttemptsPerItem; ++attempt) {
        Vec2 p{rng.uniform(r_agent, side - r_agent),
               rng.uniform(r_agent, side - r_agent)};
        if (clear_of_obstacles(p, s.obstacles, spawn_clearance) &&
            clear_of_points(p, points, 2.0 * r_agent)) {
          points.push_back(p);
          placed = true;
          break;
        }
      }
      if (!placed)
        fail(ErrorKind::PlacementFailure,
             std::string("could not place ") + what + " " + std::to_string(k));
    }
    return points;
  };

  s.starts = place_points("start");
  s.goals = place_points("goal");
  return s;
}

std::vector<std::uint8_t> Scenario::to_bytes() const {
  ByteWriter w;
  w.put_u32(kScenarioMagic);
  w.put_u32(kScenarioVersion);
  w.put_u64(seed);
  w.put_f64(params.arena_side);
  w.put_u32(static_cast<std::uint32_t>(params.n_agents));
  w.put_f64(params.obstacle_density);
  w.put_f64(params.obstacle_radius);
  w.put_f64(params.agent_radius);
  w.put_u32(static_cast<std::uint32_t>(params.max_steps));
  w.put_f64(params.dt);
  w.put_f64(params.v_max);
  w.put_f64(params.a_max);
  w.put_f64(params.goal_tolerance);
  auto put_points = [&w](const std::vector<Vec2>& pts) {
    w.put_u64(pts.size());
    for (const auto& p : pts) {
      w.put_f64(p.x);
      w.put_f64(p.y);
    }
  };
  put_points(obstacles);
  put_points(starts);
  put_points(goals);
  return w.take();
}

Scenario Scenario::from_bytes(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.get_u32() != kScenarioMagic)
    fail(ErrorKind::IoError, "not a scenario file");
  if (r.get_u32() != kScenarioVersion)
    fail(ErrorKind::VersionMismatch, "unsupported scenario version");
  Scenario s;
  s.seed = r.get_u64();
  s.params.arena_side = r.get_f64();
  s.params.n_agents = static_cast<int>(r.get_u32());
  s.params.obstacle_density = r.get_f64();
  s.params.obstacle_radius = r.get_f64();
  s.params.agent_radius = r.get_f64();
  s.params.max_steps = static_cast<int>(r.get_u32());
  s.params.dt = r.get_f64();
  s.params.v_max = r.get_f64();
  s.params.a_max = r.get_f64();
  s.params.goal_tolerance = r.get_f64();
  auto get_points = [&r]() {
    std::uint64_t n = r.get_u64();
    std::vector<Vec2> pts(n);
    for (auto& p : pts) {
      p.x = r.get_f64();
      p.y = r.get_f64();
    }
    return pts;
  };
  s.obstacles = get_points();
  s.starts = get_points();
  s.goals = get_points();
  return s;
}

void Scenario::save(const std::string& path) const {
  write_file_bytes(path, to_bytes());
}

Scenario Scenario::load(const std::string& path) {
  return from_bytes(read_file_bytes(path));
}

std::string Scenario::to_json() const {
  std::ostringstream os;
  os.precision(17);
  auto points = [&os](const std::vector<Vec2>& pts) {
    os << "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) os << ",";
      os << "[" << pts[i].x << "," << pts[i].y << "]";
    }
    os << "]";
  };
  os << "{\n";
  os << "  \"seed\": " << seed << ",\n";
  os << "  \"arena_side\": " << params.arena_side << ",\n";
  os << "  \"n_agents\": " << params.n_agents << ",\n";
  os << "  \"obstacle_density\": " << params.obstacle_density << ",\n";
  os << "  \"obstacle_radius\": " << params.obstacle_radius << ",\n";
  os << "  \"agent_radius\": " << params.agent_radius << ",\n";
  os << "  \"max_steps\": " << params.max_steps << ",\n";
  os << "  \"dt\": " << params.dt << ",\n";
  os << "  \"v_max\": " << params.v_max << ",\n";
  os << "  \"a_max\": " << params.a_max << ",\n";
  os << "  \"goal_tolerance\": " << params.goal_tolerance << ",\n";
  os << "  \"obstacles\": ";
  points(obstacles);
  os << ",\n  \"starts\": ";
  points(starts);
  os << ",\n  \"goals\": ";
  points(goals);
  os << "\n}\n";
  return os.str();
}

}  // namespace lae::sim
