#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "flep/image.hpp"

namespace flep {

inline constexpr std::uint16_t kPayloadVersion = 1;

/// The transmitted ciphertext: a full-precision plane plus the id of the key
/// bundle it was produced under.
struct EncryptedPayload {
  RealPlane plane;
  std::string key_id;
  std::uint16_t format_version = kPayloadVersion;

  std::size_t width() const noexcept { return plane.width(); }
  std::size_t height() const noexcept { return plane.height(); }

  friend bool operator==(const EncryptedPayload&, const EncryptedPayload&) = default;
};

// "FLEP" | version u16 | width u32 | height u32 | id len u16 + bytes | f64 values.
// All integers and reals little-endian.
std::vector<std::uint8_t> serialize_payload(const EncryptedPayload& payload);
EncryptedPayload deserialize_payload(std::span<const std::uint8_t> bytes);

void save_payload(const EncryptedPayload& payload, const std::filesystem::path& path);
EncryptedPayload load_payload(const std::filesystem::path& path);

}  // namespace flep
