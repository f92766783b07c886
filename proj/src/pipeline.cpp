#include "flep/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flep/scrambler.hpp"
#include "flep/wavelet.hpp"

namespace flep {

LayerSet LayerSet::parse(std::string_view text) {
  LayerSet set = none();
  std::size_t start = 0;
  bool any = false;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto name = text.substr(start, end - start);
    if (name == "scramble") set.scramble = true;
    else if (name == "diffuse") set.diffuse = true;
    else if (name == "blend") set.blend = true;
    else if (name == "noise") set.noise = true;
    else if (name == "all") set = all();
    else if (name == "none") {}
    else throw ConfigError("unknown layer '" + std::string(name) + "'");
    any = true;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!any) throw ConfigError("empty layer list");
  return set;
}

std::string LayerSet::to_string() const {
  std::vector<std::string> names;
  if (scramble) names.emplace_back("scramble");
  if (diffuse) names.emplace_back("diffuse");
  if (blend) names.emplace_back("blend");
  if (noise) names.emplace_back("noise");
  if (names.empty()) return "none";
  std::string out = names.front();
  for (std::size_t i = 1; i < names.size(); ++i) out += "," + names[i];
  return out;
}

NoiseSpec noise_spec(const KeyBundle& key) {
  return {key.noise_mean(), key.noise_std(), key.noise_seed()};
}

std::unique_ptr<Denoiser> make_denoiser(const PipelineConfig& cfg, const KeyBundle& key) {
  switch (cfg.denoiser) {
    case DenoiserKind::ExactSubtraction:
      return std::make_unique<ExactSubtractionDenoiser>(noise_spec(key));
    case DenoiserKind::GaussianFilter:
      return std::make_unique<GaussianFilterDenoiser>(cfg.filter_radius, cfg.filter_sigma,
                                                      key.noise_mean());
  }
  throw ConfigError("unknown denoiser");
}

namespace {

template <typename F>
auto in_layer(const char* layer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const LayerError&) {
    throw;
  } catch (const std::exception& e) {
    throw LayerError(layer, e.what());
  }
}

bool digest_is_set(const Digest256& d) {
  return std::any_of(d.begin(), d.end(), [](std::uint8_t b) { return b != 0; });
}

}  // namespace

GrayImage round_to_image(const RealPlane& plane) {
  std::vector<std::uint8_t> px(plane.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = static_cast<std::uint8_t>(std::clamp(std::nearbyint(plane.values()[i]), 0.0, 255.0));
  }
  return GrayImage(plane.width(), plane.height(), std::move(px));
}

EncryptedPayload encrypt_pipeline(const GrayImage& img, const GrayImage* secret,
                                  const KeyBundle& key, const PipelineConfig& cfg) {
  const auto& layers = cfg.layers;
  if (layers.blend) {
    if (secret == nullptr) throw ConfigError("blend layer enabled but no secret image given");
    if (digest_is_set(key.secret_digest()) && image_digest(*secret) != key.secret_digest()) {
      throw LayerError("blend", "secret image does not match the key bundle digest");
    }
  }
  GrayImage stage = img;
  if (layers.scramble) stage = in_layer("scramble", [&] { return scramble(stage, key); });
  if (layers.diffuse) stage = in_layer("diffuse", [&] { return diffuse(stage, key); });
  RealPlane plane = RealPlane::from_image(stage);
  if (layers.blend) {
    plane = in_layer("blend", [&] { return blend_encode(plane, *secret, key.blend_alpha()); });
  }
  if (layers.noise) plane = in_layer("noise", [&] { return inject_noise(plane, noise_spec(key)); });
  return EncryptedPayload{std::move(plane), key.key_id(), kPayloadVersion};
}

GrayImage decrypt_pipeline(const EncryptedPayload& payload, const GrayImage* secret,
                           const KeyBundle& key, const PipelineConfig& cfg,
                           std::vector<std::string>* warnings) {
  auto warn = [&](std::string msg) {
    if (warnings != nullptr) warnings->push_back(std::move(msg));
  };
  if (payload.key_id != key.key_id()) {
    throw KeyError("payload key_id '" + payload.key_id + "' does not match key bundle '" +
                   key.key_id() + "'");
  }
  const auto& layers = cfg.layers;
  if (layers.blend) {
    if (secret == nullptr) throw ConfigError("blend layer enabled but no secret image given");
    if (digest_is_set(key.secret_digest()) && image_digest(*secret) != key.secret_digest()) {
      warn("secret image does not match the key bundle digest");
    }
  }
  RealPlane plane = payload.plane;
  if (layers.noise) {
    plane = in_layer("noise", [&] { return make_denoiser(cfg, key)->denoise(plane); });
  }
  if (layers.blend) {
    plane = in_layer("blend", [&] { return blend_decode(plane, *secret, key.blend_alpha()); });
  }
  std::size_t outside = 0;
  for (double v : plane.values()) {
    if (v < -0.5 || v > 255.5) ++outside;
  }
  if (outside > 0) {
    std::ostringstream msg;
    msg << outside << " recovered values fall outside [-0.5, 255.5]; wrong key or secret image?";
    warn(msg.str());
  }
  GrayImage stage = round_to_image(plane);
  if (layers.diffuse) stage = in_layer("diffuse", [&] { return undiffuse(stage, key); });
  if (layers.scramble) stage = in_layer("scramble", [&] { return descramble(stage, key); });
  return stage;
}

}  // namespace flep
