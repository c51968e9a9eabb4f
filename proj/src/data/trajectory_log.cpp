#include "lae/data/trajectory_log.hpp"

#include <sstream>

#include "lae/binio.hpp"

namespace lae::data {

namespace {
constexpr std::uint32_t kLogMagic = 0x5445414c;  // "LAET"
constexpr std::uint32_t kLogVersion = 1;
}  // namespace

std::vector<std::uint8_t> TrajectoryLog::to_bytes() const {
  ByteWriter w;
  w.put_u32(kLogMagic);
  w.put_u32(kLogVersion);
  w.put_u64(scenario_seed);
  w.put_u32(static_cast<std::uint32_t>(n_agents));
  w.put_u32(static_cast<std::uint32_t>(steps));
  w.put_pod_vec(z1);
  w.put_pod_vec(z2);
  w.put_pod_vec(actions);
  w.put_pod_vec(positions);
  w.put_u64(events.size());
  for (const auto& e : events) {
    w.put_u32(static_cast<std::uint32_t>(e.step));
    w.put_u32(static_cast<std::uint32_t>(e.agent));
    w.put_u8(static_cast<std::uint8_t>(e.kind));
    w.put_u32(static_cast<std::uint32_t>(e.partner));
  }
  for (const auto& steps_i : collision_steps) {
    std::vector<std::int32_t> v(steps_i.begin(), steps_i.end());
    w.put_pod_vec(v);
  }
  w.put_pod_vec(reached_goal);
  w.put_pod_vec(success);
  return w.take();
}

TrajectoryLog TrajectoryLog::from_bytes(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.get_u32() != kLogMagic) fail(ErrorKind::IoError, "not a trajectory log");
  if (r.get_u32() != kLogVersion)
    fail(ErrorKind::VersionMismatch, "unsupported trajectory log version");
  TrajectoryLog log;
  log.scenario_seed = r.get_u64();
  log.n_agents = static_cast<int>(r.get_u32());
  log.steps = static_cast<int>(r.get_u32());
  log.z1 = r.get_pod_vec<float>();
  log.z2 = r.get_pod_vec<float>();
  log.actions = r.get_pod_vec<float>();
  log.positions = r.get_pod_vec<float>();
  std::uint64_t n_events = r.get_u64();
  log.events.resize(n_events);
  for (auto& e : log.events) {
    e.step = static_cast<int>(r.get_u32());
    e.agent = static_cast<int>(r.get_u32());
    e.kind = static_cast<sim::CollisionKind>(r.get_u8());
    e.partner = static_cast<int>(r.get_u32());
  }
  log.collision_steps.resize(log.n_agents);
  for (auto& steps_i : log.collision_steps) {
    auto v = r.get_pod_vec<std::int32_t>();
    steps_i.assign(v.begin(), v.end());
  }
  log.reached_goal = r.get_pod_vec<std::uint8_t>();
  log.success = r.get_pod_vec<std::uint8_t>();
  return log;
}

void TrajectoryLog::save(const std::string& path) const {
  write_file_bytes(path, to_bytes());
}

TrajectoryLog TrajectoryLog::load(const std::string& path) {
  return from_bytes(read_file_bytes(path));
}

std::string TrajectoryLog::to_csv() const {
  std::ostringstream os;
  os.precision(9);
  os << "t,agent,ax,ay";
  for (int i = 0; i < kLatentDim; ++i) os << ",z1_" << i;
  for (int i = 0; i < kLatentDim; ++i) os << ",z2_" << i;
  os << "\n";
  for (int t = 0; t < steps; ++t) {
    for (int a = 0; a < n_agents; ++a) {
      std::size_t base = (static_cast<std::size_t>(t) * n_agents + a) * 2;
      os << t << "," << a << "," << actions[base] << "," << actions[base + 1];
      const float* p1 = z1_at(t, a);
      for (int i = 0; i < kLatentDim; ++i) os << "," << p1[i];
      const float* p2 = z2_at(t, a);
      for (int i = 0; i < kLatentDim; ++i) os << "," << p2[i];
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace lae::data
