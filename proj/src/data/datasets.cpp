#include "lae/data/datasets.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "lae/binio.hpp"
#include "lae/data/labeling.hpp"

namespace lae::data {

std::size_t ClassifierDataset::n_unsafe() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.unsafe;
  return n;
}

ClassifierDataset build_classifier_dataset(
    const std::vector<TrajectoryLog>& logs, int H) {
  if (logs.empty()) fail(ErrorKind::EmptyDataset, "no trajectory logs");
  ClassifierDataset ds;
  for (std::size_t traj = 0; traj < logs.size(); ++traj) {
    const auto& log = logs[traj];
    auto labels = label_time_to_collision(log, H);
    for (int a = 0; a < log.n_agents; ++a) {
      for (int t = 0; t < log.steps; ++t) {
        LabeledSample s;
        s.z = log.z1_latent(t, a);
        s.unsafe = labels[a][t];
        s.traj = static_cast<std::uint32_t>(traj);
        s.agent = static_cast<std::uint16_t>(a);
        s.t = static_cast<std::uint32_t>(t);
        ds.samples.push_back(s);
      }
    }
  }
  return ds;
}

void emit_sequences_for_collision(const float* span, int span_start, int t_c,
                                  int n, int m, int H, std::uint32_t traj,
                                  std::uint16_t agent,
                                  std::vector<LcwmSequence>& out) {
  const int window_start = std::max(t_c - H, 0);
  if (window_start < span_start)
    fail(ErrorKind::ConfigError, "latent span does not cover horizon H");
  auto at = [&](int t) { return span + std::size_t(t - span_start) * kLatentDim; };
  for (int t = window_start + n; t <= t_c; ++t) {
    LcwmSequence seq;
    seq.history.resize(n);
    for (int k = 0; k < n; ++k) {
      const float* p = at(t - n + 1 + k);
      std::copy(p, p + kLatentDim, seq.history[k].begin());
    }
    const int target_t = std::min(t + m, t_c);
    const float* p = at(target_t);
    std::copy(p, p + kLatentDim, seq.target.begin());
    seq.traj = traj;
    seq.agent = agent;
    seq.t = static_cast<std::uint32_t>(t);
    seq.t_c = static_cast<std::uint32_t>(t_c);
    out.push_back(std::move(seq));
  }
}

LcwmDataset build_lcwm_dataset(const std::vector<TrajectoryLog>& logs, int n,
                               int m, int H, LatentSource source) {
  if (n < 1 || m < 1) fail(ErrorKind::ConfigError, "need n >= 1 and m >= 1");
  LcwmDataset ds;
  ds.n = n;
  ds.m = m;
  ds.H = H;
  ds.source = source;
  for (std::size_t traj = 0; traj < logs.size(); ++traj) {
    const auto& log = logs[traj];
    for (int a = 0; a < log.n_agents; ++a) {
      for (int t_c : log.collision_steps[a]) {
        const int span_start = std::max(t_c - H, 0);
        std::vector<float> span;
        span.reserve(std::size_t(t_c - span_start + 1) * kLatentDim);
        for (int t = span_start; t <= t_c; ++t) {
          const float* p = latent_at(log, source, t, a);
          span.insert(span.end(), p, p + kLatentDim);
        }
        emit_sequences_for_collision(span.data(), span_start, t_c, n, m, H,
                                     static_cast<std::uint32_t>(traj),
                                     static_cast<std::uint16_t>(a),
                                     ds.sequences);
      }
    }
  }
  if (ds.sequences.empty())
    fail(ErrorKind::EmptyDataset, "no collision-bearing trajectories");
  return ds;
}

// ---- CollectedDataset ----

void CollectedDataset::append_log(const TrajectoryLog& log,
                                  std::uint32_t traj_index) {
  n_trajectories = std::max(n_trajectories, traj_index + 1);
  total_steps += static_cast<std::uint64_t>(log.steps) * log.n_agents;
  total_events += log.events.size();

  for (int a = 0; a < log.n_agents; ++a) {
    const auto& c = log.collision_steps[a];
    auto labels = label_steps(c, log.steps, h_max);
    for (int t = 0; t < log.steps; ++t) {
      const bool keep = labels[t] || (thin_counter_ % safe_keep_stride == 0);
      ++thin_counter_;
      if (!keep) continue;
      LabeledSample s;
      s.z = log.z1_latent(t, a);
      s.unsafe = labels[t];
      s.traj = traj_index;
      s.agent = static_cast<std::uint16_t>(a);
      s.t = static_cast<std::uint32_t>(t);
      pool.push_back(s);
    }
    if (!c.empty()) {
      AgentCollisions ac;
      ac.traj = traj_index;
      ac.agent = static_cast<std::uint16_t>(a);
      ac.steps = c;
      collisions.push_back(std::move(ac));

      for (int t_c : c) {
        CollisionWindow w;
        w.traj = traj_index;
        w.agent = static_cast<std::uint16_t>(a);
        w.t_c = static_cast<std::uint32_t>(t_c);
        w.span_start = static_cast<std::uint32_t>(std::max(t_c - h_max, 0));
        const int len = t_c - static_cast<int>(w.span_start) + 1;
        w.z1.reserve(std::size_t(len) * kLatentDim);
        w.z2.reserve(std::size_t(len) * kLatentDim);
        for (int t = static_cast<int>(w.span_start); t <= t_c; ++t) {
          const float* p1 = log.z1_at(t, a);
          w.z1.insert(w.z1.end(), p1, p1 + kLatentDim);
          const float* p2 = log.z2_at(t, a);
          w.z2.insert(w.z2.end(), p2, p2 + kLatentDim);
        }
        windows.push_back(std::move(w));
      }
    }
  }
}

ClassifierDataset CollectedDataset::classifier_dataset(int H) const {
  if (H > h_max)
    fail(ErrorKind::ConfigError,
         "H exceeds the collected horizon h_max = " + std::to_string(h_max));
  if (pool.empty()) fail(ErrorKind::EmptyDataset, "empty classifier pool");

  std::unordered_map<std::uint64_t, const std::vector<int>*> sets;
  sets.reserve(collisions.size());
  for (const auto& ac : collisions)
    sets[(std::uint64_t(ac.traj) << 16) | ac.agent] = &ac.steps;

  ClassifierDataset ds;
  ds.samples.reserve(pool.size());
  for (const auto& s : pool) {
    LabeledSample out = s;
    out.unsafe = 0;
    auto it = sets.find((std::uint64_t(s.traj) << 16) | s.agent);
    if (it != sets.end()) {
      const auto& c = *it->second;
      auto lb = std::lower_bound(c.begin(), c.end(), static_cast<int>(s.t));
      if (lb != c.end() && *lb - static_cast<int>(s.t) <= H) out.unsafe = 1;
    }
    ds.samples.push_back(out);
  }
  return ds;
}

LcwmDataset CollectedDataset::lcwm_dataset(int n, int m, int H,
                                           LatentSource source) const {
  if (H > h_max)
    fail(ErrorKind::ConfigError,
         "H exceeds the collected horizon h_max = " + std::to_string(h_max));
  if (n < 1 || m < 1) fail(ErrorKind::ConfigError, "need n >= 1 and m >= 1");
  LcwmDataset ds;
  ds.n = n;
  ds.m = m;
  ds.H = H;
  ds.source = source;
  for (const auto& w : windows) {
    const float* span = source == LatentSource::z1 ? w.z1.data() : w.z2.data();
    emit_sequences_for_collision(span, static_cast<int>(w.span_start),
                                 static_cast<int>(w.t_c), n, m, H, w.traj,
                                 w.agent, ds.sequences);
  }
  if (ds.sequences.empty())
    fail(ErrorKind::EmptyDataset, "no collision-bearing trajectories collected");
  return ds;
}

namespace {
constexpr std::uint32_t kCollectMagic = 0x4345414c;  // "LAEC"
constexpr std::uint32_t kCollectVersion = 1;
}  // namespace

std::vector<std::uint8_t> CollectedDataset::to_bytes() const {
  ByteWriter w;
  w.put_u32(kCollectMagic);
  w.put_u32(kCollectVersion);
  w.put_u32(static_cast<std::uint32_t>(h_max));
  w.put_u32(static_cast<std::uint32_t>(safe_keep_stride));
  w.put_u32(n_trajectories);
  w.put_u64(total_steps);
  w.put_u64(total_events);

  w.put_u64(pool.size());
  for (const auto& s : pool) {
    w.put_bytes(s.z.data(), sizeof(float) * kLatentDim);
    w.put_u8(s.unsafe);
    w.put_u32(s.traj);
    w.put_u32(s.agent);
    w.put_u32(s.t);
  }
  w.put_u64(collisions.size());
  for (const auto& ac : collisions) {
    w.put_u32(ac.traj);
    w.put_u32(ac.agent);
    std::vector<std::int32_t> v(ac.steps.begin(), ac.steps.end());
    w.put_pod_vec(v);
  }
  w.put_u64(windows.size());
  for (const auto& win : windows) {
    w.put_u32(win.traj);
    w.put_u32(win.agent);
    w.put_u32(win.t_c);
    w.put_u32(win.span_start);
    w.put_pod_vec(win.z1);
    w.put_pod_vec(win.z2);
  }
  return w.take();
}

CollectedDataset CollectedDataset::from_bytes(
    const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.get_u32() != kCollectMagic)
    fail(ErrorKind::IoError, "not a collected dataset");
  if (r.get_u32() != kCollectVersion)
    fail(ErrorKind::VersionMismatch, "unsupported collected dataset version");
  CollectedDataset d;
  d.h_max = static_cast<int>(r.get_u32());
  d.safe_keep_stride = static_cast<int>(r.get_u32());
  d.n_trajectories = r.get_u32();
  d.total_steps = r.get_u64();
  d.total_events = r.get_u64();

  d.pool.resize(r.get_u64());
  for (auto& s : d.pool) {
    r.get_bytes(s.z.data(), sizeof(float) * kLatentDim);
    s.unsafe = r.get_u8();
    s.traj = r.get_u32();
    s.agent = static_cast<std::uint16_t>(r.get_u32());
    s.t = r.get_u32();
  }
  d.collisions.resize(r.get_u64());
  for (auto& ac : d.collisions) {
    ac.traj = r.get_u32();
    ac.agent = static_cast<std::uint16_t>(r.get_u32());
    auto v = r.get_pod_vec<std::int32_t>();
    ac.steps.assign(v.begin(), v.end());
  }
  d.windows.resize(r.get_u64());
  for (auto& win : d.windows) {
    win.traj = r.get_u32();
    win.agent = static_cast<std::uint16_t>(r.get_u32());
    win.t_c = r.get_u32();
    win.span_start = r.get_u32();
    win.z1 = r.get_pod_vec<float>();
    win.z2 = r.get_pod_vec<float>();
  }
  return d;
}

void CollectedDataset::save(const std::string& path) const {
  write_file_bytes(path, to_bytes());
}

CollectedDataset CollectedDataset::load(const std::string& path) {
  return from_bytes(read_file_bytes(path));
}

std::string CollectedDataset::pool_csv(std::size_t max_rows) const {
  std::ostringstream os;
  os.precision(9);
  os << "traj,agent,t,unsafe";
  for (int i = 0; i < kLatentDim; ++i) os << ",z" << i;
  os << "\n";
  const std::size_t rows = std::min(max_rows, pool.size());
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& s = pool[i];
    os << s.traj << "," << s.agent << "," << s.t << ","
       << static_cast<int>(s.unsafe);
    for (int k = 0; k < kLatentDim; ++k) os << "," << s.z[k];
    os << "\n";
  }
  return os.str();
}

}  // namespace lae::data
