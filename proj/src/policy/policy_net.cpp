#include "lae/policy/policy_net.hpp"

#include "json.hpp"
#include "lae/binio.hpp"
#include "lae/sha256.hpp"

namespace lae::policy {

using nlohmann::json;

void save_policy(Policy& net, PolicyMeta meta, const std::string& prefix) {
  auto params = net.params();
  auto store = nn::save_weights(params);
  auto bytes = store.to_bytes();
  write_file_bytes(prefix + ".ckpt", bytes);
  meta.freeze_hash = Sha256::hex(bytes.data(), bytes.size());

  json j;
  j["kind"] = "policy";
  j["embed"] = meta.dims.embed;
  j["enc_hidden"] = meta.dims.enc_hidden;
  j["down_hidden"] = meta.dims.down_hidden;
  j["a_max"] = meta.a_max;
  j["partition"] = {0, kSelfSliceEnd, kNeighSliceEnd, kLatentDim};
  j["freeze_hash"] = meta.freeze_hash;
  j["bc_val_mse"] = meta.bc_val_mse;
  j["bc_seed"] = meta.bc_seed;
  write_file_text(prefix + ".meta.json", j.dump(2) + "\n");
}

LoadedPolicy load_policy(const std::string& prefix) {
  json j;
  try {
    j = json::parse(read_file_text(prefix + ".meta.json"));
  } catch (const Error&) {
    fail(ErrorKind::MissingArtifact, "policy checkpoint not found: " + prefix);
  }
  PolicyMeta meta;
  meta.dims.embed = j.at("embed").get<int>();
  meta.dims.enc_hidden = j.at("enc_hidden").get<int>();
  meta.dims.down_hidden = j.at("down_hidden").get<int>();
  meta.a_max = j.at("a_max").get<double>();
  meta.freeze_hash = j.at("freeze_hash").get<std::string>();
  meta.bc_val_mse = j.at("bc_val_mse").get<double>();
  meta.bc_seed = j.at("bc_seed").get<std::uint64_t>();

  auto bytes = read_file_bytes(prefix + ".ckpt");
  std::string hash = Sha256::hex(bytes.data(), bytes.size());
  if (hash != meta.freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "policy checkpoint bytes do not match the freeze hash");
  auto store = nn::WeightStore::from_bytes(bytes);

  LoadedPolicy out{Policy(meta.dims, meta.a_max, 0), meta};
  auto params = out.net.params();
  nn::load_weights(store, params);
  out.net.freeze();
  return out;
}

void assert_policy_frozen(const std::string& prefix, const PolicyMeta& meta) {
  if (sha256_file_hex(prefix + ".ckpt") != meta.freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "policy checkpoint changed after freeze: " + prefix);
}

}  // namespace lae::policy
