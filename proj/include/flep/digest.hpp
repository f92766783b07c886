#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "flep/image.hpp"

namespace flep {

using Digest256 = std::array<std::uint8_t, 32>;

Digest256 sha256(std::span<const std::uint8_t> bytes);

// SHA-256 over width (u32 LE), height (u32 LE) and the raw pixels.
Digest256 image_digest(const GrayImage& img);

std::string to_hex(std::span<const std::uint8_t> bytes);
Digest256 digest_from_hex(std::string_view hex);

// FNV-1a, used for stable per-name seeds.
std::uint64_t fnv1a64(std::string_view text) noexcept;

}  // namespace flep
