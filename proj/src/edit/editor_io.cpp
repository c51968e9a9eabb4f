#include "lae/edit/editor_io.hpp"

#include "json.hpp"
#include "lae/binio.hpp"
#include "lae/nn/weight_store.hpp"
#include "lae/sha256.hpp"

namespace lae::edit {

using nlohmann::json;

namespace {

constexpr std::uint32_t kKdMagic = 0x4b45414c;  // "LAEK"

std::vector<std::uint8_t> kd_blob(const KdEditor& e) {
  ByteWriter w;
  w.put_u32(kKdMagic);
  w.put_u32(1);
  w.put_pod_vec(e.keys_);
  w.put_pod_vec(e.payloads_);
  w.put_pod_vec(e.ttc_);
  return w.take();
}

void kd_from_blob(KdEditor& e, const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.get_u32() != kKdMagic) fail(ErrorKind::IoError, "not a kd index blob");
  if (r.get_u32() != 1)
    fail(ErrorKind::VersionMismatch, "unsupported kd blob version");
  e.keys_ = r.get_pod_vec<float>();
  e.payloads_ = r.get_pod_vec<float>();
  e.ttc_ = r.get_pod_vec<std::int32_t>();
  e.build_trees();
}

}  // namespace

void save_editor(Editor& editor, const std::string& prefix) {
  json j;
  j["kind"] = editor.kind();
  j["trained_source"] =
      editor.trained_source == data::LatentSource::z1 ? "z1" : "z2";
  std::vector<std::uint8_t> payload;

  if (auto* lcwm = dynamic_cast<LcwmEditor*>(&editor)) {
    auto params = lcwm->net().params();
    payload = nn::save_weights(params).to_bytes();
    j["n"] = lcwm->n();
    j["m"] = lcwm->m();
    j["hidden"] = lcwm->hidden();
    j["init_seed"] = lcwm->init_seed();
    j["report"] = {{"train_mse", lcwm->report.train_mse},
                   {"val_mse", lcwm->report.val_mse},
                   {"n_sequences", lcwm->report.n_sequences}};
  } else if (auto* kd = dynamic_cast<KdEditor*>(&editor)) {
    payload = kd_blob(*kd);
    j["H"] = kd->cfg.H;
    j["m"] = kd->cfg.m;
    j["bucket_width"] = kd->cfg.bucket_width;
    j["max_points"] = kd->cfg.max_points;
    j["points"] = kd->size();
  } else if (auto* sae = dynamic_cast<SaeEditor*>(&editor)) {
    auto params = sae->params();
    payload = nn::save_weights(params).to_bytes();
    j["dict"] = sae->dict;
    j["gamma"] = sae->gamma;
    j["top_k"] = sae->top_k;
    j["init_seed"] = sae->init_seed;
    j["ranked_units"] = sae->ranked_units;
    j["report"] = {{"recon_mse", sae->report.recon_mse},
                   {"hidden_sparsity", sae->report.hidden_sparsity}};
  } else if (auto* ae = dynamic_cast<AeEditor*>(&editor)) {
    auto params = ae->params();
    payload = nn::save_weights(params).to_bytes();
    j["bottleneck"] = ae->bottleneck;
    j["init_seed"] = ae->init_seed;
    j["heldout_mse"] = ae->heldout_mse;
  } else {
    fail(ErrorKind::ConfigError, "unknown editor kind: " + editor.kind());
  }

  write_file_bytes(prefix + ".ckpt", payload);
  j["freeze_hash"] = Sha256::hex(payload.data(), payload.size());
  write_file_text(prefix + ".meta.json", j.dump(2) + "\n");
}

LoadedEditor load_editor(const std::string& prefix) {
  json j;
  try {
    j = json::parse(read_file_text(prefix + ".meta.json"));
  } catch (const Error&) {
    fail(ErrorKind::MissingArtifact, "editor checkpoint not found: " + prefix);
  }
  LoadedEditor out;
  out.kind = j.at("kind").get<std::string>();
  out.freeze_hash = j.at("freeze_hash").get<std::string>();
  const auto source = j.value("trained_source", "z1") == std::string("z2")
                          ? data::LatentSource::z2
                          : data::LatentSource::z1;

  auto bytes = read_file_bytes(prefix + ".ckpt");
  if (Sha256::hex(bytes.data(), bytes.size()) != out.freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "editor checkpoint bytes do not match the freeze hash");

  if (out.kind == "lcwm_gru") {
    auto e = std::make_unique<LcwmEditor>(
        j.at("n").get<int>(), j.at("m").get<int>(), j.at("hidden").get<int>(),
        j.at("init_seed").get<std::uint64_t>());
    auto store = nn::WeightStore::from_bytes(bytes);
    auto params = e->net().params();
    nn::load_weights(store, params);
    out.editor = std::move(e);
  } else if (out.kind == "kd") {
    auto e = std::make_unique<KdEditor>();
    e->cfg.H = j.at("H").get<int>();
    e->cfg.m = j.at("m").get<int>();
    e->cfg.bucket_width = j.at("bucket_width").get<int>();
    e->cfg.max_points = j.at("max_points").get<std::size_t>();
    kd_from_blob(*e, bytes);
    out.editor = std::move(e);
  } else if (out.kind == "sae") {
    auto e = std::make_unique<SaeEditor>(j.at("dict").get<int>(),
                                         j.at("init_seed").get<std::uint64_t>());
    e->gamma = j.at("gamma").get<double>();
    e->top_k = j.at("top_k").get<int>();
    e->ranked_units = j.at("ranked_units").get<std::vector<int>>();
    auto store = nn::WeightStore::from_bytes(bytes);
    auto params = e->params();
    nn::load_weights(store, params);
    out.editor = std::move(e);
  } else if (out.kind == "ae") {
    auto e = std::make_unique<AeEditor>(j.at("bottleneck").get<int>(),
                                        j.at("init_seed").get<std::uint64_t>());
    auto store = nn::WeightStore::from_bytes(bytes);
    auto params = e->params();
    nn::load_weights(store, params);
    out.editor = std::move(e);
  } else {
    fail(ErrorKind::ConfigError, "unknown editor kind: " + out.kind);
  }
  out.editor->trained_source = source;
  return out;
}

void assert_editor_frozen(const std::string& prefix,
                          const std::string& freeze_hash) {
  if (sha256_file_hex(prefix + ".ckpt") != freeze_hash)
    fail(ErrorKind::FrozenHashMismatch,
         "editor checkpoint changed after freeze: " + prefix);
}

}  // namespace lae::edit
