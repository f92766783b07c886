#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "flep/errors.hpp"
#include "flep/image.hpp"
#include "flep/key_bundle.hpp"
#include "flep/noise.hpp"
#include "flep/payload.hpp"

namespace flep {

/// Enabled security layers. Encryption always runs them in the order
/// scramble -> diffuse -> blend -> noise; decryption runs the reverse.
struct LayerSet {
  bool scramble = true;
  bool diffuse = true;
  bool blend = true;
  bool noise = true;

  static LayerSet all() { return {}; }
  static LayerSet none() { return {false, false, false, false}; }

  // Comma-separated names, e.g. "scramble,diffuse,blend". "all" is accepted.
  static LayerSet parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const LayerSet&, const LayerSet&) = default;
};

enum class DenoiserKind { ExactSubtraction, GaussianFilter };

struct PipelineConfig {
  LayerSet layers;
  DenoiserKind denoiser = DenoiserKind::ExactSubtraction;
  std::size_t filter_radius = 2;
  double filter_sigma = 1.5;
};

// A layer precondition failed; what() is prefixed with the layer name.
class LayerError : public Error {
 public:
  LayerError(std::string layer, const std::string& message)
      : Error(layer + ": " + message), layer_(std::move(layer)) {}
  const std::string& layer() const noexcept { return layer_; }

 private:
  std::string layer_;
};

NoiseSpec noise_spec(const KeyBundle& key);
std::unique_ptr<Denoiser> make_denoiser(const PipelineConfig& cfg, const KeyBundle& key);

// `secret` may be null when the blend layer is disabled.
EncryptedPayload encrypt_pipeline(const GrayImage& img, const GrayImage* secret,
                                  const KeyBundle& key, const PipelineConfig& cfg = {});

// Non-fatal findings (secret digest mismatch, out-of-range residuals) are
// appended to `warnings` when it is non-null.
GrayImage decrypt_pipeline(const EncryptedPayload& payload, const GrayImage* secret,
                           const KeyBundle& key, const PipelineConfig& cfg = {},
                           std::vector<std::string>* warnings = nullptr);

// Rounds to nearest (ties to even) and clamps to [0, 255].
GrayImage round_to_image(const RealPlane& plane);

}  // namespace flep
