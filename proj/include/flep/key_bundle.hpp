#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flep/digest.hpp"

namespace flep {

/// Raw fields of a key bundle. Validation happens when a KeyBundle is built.
struct KeyParams {
  std::string key_id;
  double chaos_seed = 0.0;   // logistic map x0, open interval (0, 1)
  double chaos_param = 3.99; // logistic map r, [3.9, 4.0)
  std::size_t block_side = 2;
  // Per-block ordering keys; empty until bound to an image size.
  std::vector<double> group_keys;
  Digest256 secret_digest{};
  double blend_alpha = 0.9;
  double noise_mean = 0.0;
  double noise_std = 25.0;
  std::uint64_t noise_seed = 0;
  std::uint8_t diffusion_iv = 0;

  friend bool operator==(const KeyParams&, const KeyParams&) = default;
};

/// All secret material for one encryption context. Immutable and validated.
class KeyBundle {
 public:
  explicit KeyBundle(KeyParams params);

  // Random bundle from a 64-bit seed; secret digest left zeroed.
  static KeyBundle generate(std::uint64_t seed);

  const KeyParams& params() const noexcept { return p_; }
  const std::string& key_id() const noexcept { return p_.key_id; }
  double chaos_seed() const noexcept { return p_.chaos_seed; }
  double chaos_param() const noexcept { return p_.chaos_param; }
  std::size_t block_side() const noexcept { return p_.block_side; }
  const std::vector<double>& group_keys() const noexcept { return p_.group_keys; }
  const Digest256& secret_digest() const noexcept { return p_.secret_digest; }
  double blend_alpha() const noexcept { return p_.blend_alpha; }
  double noise_mean() const noexcept { return p_.noise_mean; }
  double noise_std() const noexcept { return p_.noise_std; }
  std::uint64_t noise_seed() const noexcept { return p_.noise_seed; }
  std::uint8_t diffusion_iv() const noexcept { return p_.diffusion_iv; }

  // Modified copies. Changing chaos material or block side drops group keys.
  KeyBundle with_chaos_seed(double x0) const;
  KeyBundle with_block_side(std::size_t side) const;
  KeyBundle with_secret(const GrayImage& secret) const;
  KeyBundle with_noise(double mean, double stddev, std::uint64_t seed) const;
  KeyBundle with_diffusion_iv(std::uint8_t iv) const;
  KeyBundle with_group_keys(std::vector<double> keys) const;

  friend bool operator==(const KeyBundle&, const KeyBundle&) = default;

 private:
  KeyParams p_;
};

std::string serialize_keybundle(const KeyBundle& key);
KeyBundle parse_keybundle(std::string_view text);

KeyBundle load_keybundle(const std::string& path);
void save_keybundle(const KeyBundle& key, const std::string& path);

}  // namespace flep
