#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flep/image.hpp"

namespace flep {

// Deterministic stand-ins for standard test imagery, used when no external
// corpus is available.
enum class SceneKind { Gradient, Rings, Checker, Texture, Blobs, Stripes, Portrait, Terrain };

std::string scene_name(SceneKind kind);
std::vector<SceneKind> all_scenes();

GrayImage synthetic_scene(SceneKind kind, std::size_t width, std::size_t height, std::uint64_t seed);

// Smooth random texture usable as a blend secret.
GrayImage synthetic_secret(std::size_t width, std::size_t height, std::uint64_t seed);

// Writes `count` scenes (cycling through all kinds, distinct seeds) as
// <name>.pgm into `dir`, returns the written paths sorted by name.
std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::size_t count, std::size_t side,
                                                          std::uint64_t seed);

}  // namespace flep
