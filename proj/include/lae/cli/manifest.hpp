#pragma once

#include <string>
#include <vector>

#include "lae/cli/config.hpp"

namespace lae::cli {

// Every subcommand writes <stage_dir>/manifest.json: tool version, resolved
// config (plus its hash), input artifact hashes and output file hashes. No
// timestamps, so manifests themselves reproduce byte-identically.
struct ManifestEntry {
  std::string name;
  std::string path;
  std::string sha256;
};

void write_manifest(const std::string& stage_dir, const std::string& stage,
                    const Config& cfg,
                    const std::vector<ManifestEntry>& inputs,
                    const std::vector<std::string>& output_paths);

ManifestEntry hash_entry(const std::string& name, const std::string& path);

}  // namespace lae::cli
