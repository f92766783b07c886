#include "flep/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "flep/errors.hpp"

namespace flep {

std::string scene_name(SceneKind kind) {
  switch (kind) {
    case SceneKind::Gradient: return "gradient";
    case SceneKind::Rings: return "rings";
    case SceneKind::Checker: return "checker";
    case SceneKind::Texture: return "texture";
    case SceneKind::Blobs: return "blobs";
    case SceneKind::Stripes: return "stripes";
    case SceneKind::Portrait: return "portrait";
    case SceneKind::Terrain: return "terrain";
  }
  return "unknown";
}

std::vector<SceneKind> all_scenes() {
  return {SceneKind::Gradient, SceneKind::Rings,   SceneKind::Checker,  SceneKind::Texture,
          SceneKind::Blobs,    SceneKind::Stripes, SceneKind::Portrait, SceneKind::Terrain};
}

namespace {

// Bilinearly interpolated lattice noise, summed over octaves; output in [0, 1].
class ValueNoise {
 public:
  ValueNoise(std::size_t lattice, std::mt19937_64& rng) : n_(lattice), grid_(lattice * lattice) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& g : grid_) g = u(rng);
  }

  double at(double x, double y) const {
    const double fx = x * static_cast<double>(n_), fy = y * static_cast<double>(n_);
    const auto ix = static_cast<std::size_t>(std::floor(fx)), iy = static_cast<std::size_t>(std::floor(fy));
    const double tx = smooth(fx - std::floor(fx)), ty = smooth(fy - std::floor(fy));
    auto g = [&](std::size_t i, std::size_t j) { return grid_[(j % n_) * n_ + (i % n_)]; };
    const double top = g(ix, iy) * (1 - tx) + g(ix + 1, iy) * tx;
    const double bot = g(ix, iy + 1) * (1 - tx) + g(ix + 1, iy + 1) * tx;
    return top * (1 - ty) + bot * ty;
  }

 private:
  static double smooth(double t) { return t * t * (3 - 2 * t); }
  std::size_t n_;
  std::vector<double> grid_;
};

double fractal(const std::vector<ValueNoise>& octaves, double x, double y) {
  double sum = 0.0, weight = 0.0, amp = 1.0;
  for (const auto& o : octaves) {
    sum += amp * o.at(x, y);
    weight += amp;
    amp *= 0.55;
  }
  return sum / weight;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

GrayImage synthetic_scene(SceneKind kind, std::size_t width, std::size_t height, std::uint64_t seed) {
  if (width < 2 || height < 2) throw DimensionError("synthetic scene must be at least 2x2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ValueNoise> octaves;
  for (std::size_t lattice = 4; lattice <= 64; lattice *= 2) octaves.emplace_back(lattice, rng);
  const double phase = u(rng) * 2 * std::numbers::pi;
  const double cx = 0.3 + 0.4 * u(rng), cy = 0.3 + 0.4 * u(rng);
  std::vector<std::array<double, 4>> blobs(12);
  for (auto& b : blobs) b = {u(rng), u(rng), 0.03 + 0.12 * u(rng), 40 + 180 * u(rng)};

  std::vector<std::uint8_t> px(width * height);
  for (std::size_t j = 0; j < height; ++j) {
    for (std::size_t i = 0; i < width; ++i) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(width);
      const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(height);
      const double grain = fractal(octaves, x, y);
      double v = 0.0;
      switch (kind) {
        case SceneKind::Gradient:
          v = 20 + 200 * (0.6 * x + 0.4 * y) + 12 * (grain - 0.5);
          break;
        case SceneKind::Rings: {
          const double r = std::hypot(x - cx, y - cy);
          v = 128 + 90 * std::cos(40 * r + phase) * std::exp(-2 * r) + 20 * (grain - 0.5);
          break;
        }
        case SceneKind::Checker: {
          const bool on = ((i * 8 / width) + (j * 8 / height)) % 2 == 0;
          v = (on ? 200 : 50) + 30 * (grain - 0.5);
          break;
        }
        case SceneKind::Texture:
          v = 255 * fractal(octaves, 3 * x, 3 * y);
          v = 128 + 1.8 * (v - 128);
          break;
        case SceneKind::Blobs: {
          v = 30;
          for (const auto& b : blobs) {
            const double d2 = (x - b[0]) * (x - b[0]) + (y - b[1]) * (y - b[1]);
            v += b[3] * std::exp(-d2 / (2 * b[2] * b[2]));
          }
          v += 15 * (grain - 0.5);
          break;
        }
        case SceneKind::Stripes:
          v = 128 + 100 * std::sin(2 * std::numbers::pi * (6 * x + 2 * y) + phase) * (0.5 + grain);
          break;
        case SceneKind::Portrait: {
          const double face = std::exp(-((x - 0.5) * (x - 0.5) / 0.04 + (y - 0.45) * (y - 0.45) / 0.07));
          v = 60 + 150 * face + 40 * (grain - 0.5) - 50 * (y > 0.8 ? 1 : 0);
          break;
        }
        case SceneKind::Terrain:
          v = 255 * std::pow(fractal(octaves, x, y), 1.6) * 1.4;
          break;
      }
      px[j * width + i] = to_byte(v);
    }
  }
  return GrayImage(width, height, std::move(px));
}

GrayImage synthetic_secret(std::size_t width, std::size_t height, std::uint64_t seed) {
  return synthetic_scene(SceneKind::Texture, width, height, seed ^ 0x5ec7e75ec7e7ULL);
}

std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::size_t count, std::size_t side,
                                                          std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  const auto kinds = all_scenes();
  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < count; ++k) {
    const auto kind = kinds[k % kinds.size()];
    char name[64];
    std::snprintf(name, sizeof name, "%02zu_%s.pgm", k, scene_name(kind).c_str());
    const auto path = dir / name;
    save_pgm(synthetic_scene(kind, side, side, seed + k), path);
    paths.push_back(path);
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace flep
