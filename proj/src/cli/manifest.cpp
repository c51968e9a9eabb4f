#include "lae/cli/manifest.hpp"

#include <filesystem>

#include "json.hpp"
#include "lae/binio.hpp"
#include "lae/sha256.hpp"

namespace lae::cli {

using nlohmann::json;

ManifestEntry hash_entry(const std::string& name, const std::string& path) {
  return {name, path, sha256_file_hex(path)};
}

void write_manifest(const std::string& stage_dir, const std::string& stage,
                    const Config& cfg,
                    const std::vector<ManifestEntry>& inputs,
                    const std::vector<std::string>& output_paths) {
  json j;
  j["tool"] = kToolVersion;
  j["stage"] = stage;
  j["seed"] = cfg.seed;
  j["config_hash"] = config_hash(cfg);
  j["config"] = json::parse(config_to_json_text(cfg));
  json in = json::array();
  for (const auto& e : inputs)
    in.push_back({{"name", e.name}, {"path", e.path}, {"sha256", e.sha256}});
  j["inputs"] = in;
  json out = json::array();
  for (const auto& p : output_paths) {
    out.push_back({{"path", p}, {"sha256", sha256_file_hex(p)}});
  }
  j["outputs"] = out;
  std::filesystem::create_directories(stage_dir);
  write_file_text(stage_dir + "/manifest.json", j.dump(2) + "\n");
}

}  // namespace lae::cli
