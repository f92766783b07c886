#include "flep/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flep/errors.hpp"

namespace flep {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1].
  double unit() noexcept { return std::ldexp(static_cast<double>((next() >> 11) + 1), -53); }

 private:
  std::uint64_t state_;
};

double to_grid(double v) { return std::ldexp(std::nearbyint(std::ldexp(v, 32)), -32); }

}  // namespace

std::vector<double> noise_field(const NoiseSpec& spec, std::size_t count) {
  if (!(spec.stddev >= 0.0) || !std::isfinite(spec.stddev) || !std::isfinite(spec.mean)) {
    throw ConfigError("noise spec needs a finite mean and stddev >= 0");
  }
  std::vector<double> out(count);
  SplitMix64 rng(spec.seed);
  for (std::size_t i = 0; i < count; i += 2) {
    const double u1 = rng.unit(), u2 = rng.unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = to_grid(spec.mean + spec.stddev * radius * std::cos(angle));
    if (i + 1 < count) out[i + 1] = to_grid(spec.mean + spec.stddev * radius * std::sin(angle));
  }
  return out;
}

RealPlane inject_noise(const RealPlane& plane, const NoiseSpec& spec) {
  const auto noise = noise_field(spec, plane.size());
  std::vector<double> out(plane.values().begin(), plane.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += noise[i];
  return RealPlane(plane.width(), plane.height(), std::move(out));
}

RealPlane denoise_exact(const RealPlane& plane, const NoiseSpec& spec) {
  const auto noise = noise_field(spec, plane.size());
  std::vector<double> out(plane.values().begin(), plane.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= noise[i];
  return RealPlane(plane.width(), plane.height(), std::move(out));
}

std::vector<double> gaussian_kernel(std::size_t radius, double sigma) {
  if (radius == 0) throw ConfigError("filter radius must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("filter sigma must be > 0");
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(radius);
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (auto& v : k) v /= sum;
  return k;
}

RealPlane denoise_filter(const RealPlane& plane, std::size_t radius, double sigma) {
  const auto kernel = gaussian_kernel(radius, sigma);
  const std::size_t w = plane.width(), h = plane.height();
  if (2 * radius > std::min(w, h)) {
    throw DimensionError("filter radius " + std::to_string(radius) +
                         " exceeds half the smaller plane side");
  }
  auto reflect = [](std::ptrdiff_t i, std::ptrdiff_t n) {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
  };
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const auto sw = static_cast<std::ptrdiff_t>(w), sh = static_cast<std::ptrdiff_t>(h);
  std::vector<double> tmp(w * h), out(w * h);
  for (std::ptrdiff_t y = 0; y < sh; ++y) {
    for (std::ptrdiff_t x = 0; x < sw; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -r; k <= r; ++k) {
        acc += kernel[static_cast<std::size_t>(k + r)] *
               plane.at(static_cast<std::size_t>(reflect(x + k, sw)), static_cast<std::size_t>(y));
      }
      tmp[static_cast<std::size_t>(y * sw + x)] = acc;
    }
  }
  for (std::ptrdiff_t y = 0; y < sh; ++y) {
    for (std::ptrdiff_t x = 0; x < sw; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -r; k <= r; ++k) {
        acc += kernel[static_cast<std::size_t>(k + r)] *
               tmp[static_cast<std::size_t>(reflect(y + k, sh) * sw + x)];
      }
      out[static_cast<std::size_t>(y * sw + x)] = acc;
    }
  }
  return RealPlane(w, h, std::move(out));
}

RealPlane GaussianFilterDenoiser::denoise(const RealPlane& plane) const {
  auto smoothed = denoise_filter(plane, radius_, sigma_);
  if (mean_ == 0.0) return smoothed;
  std::vector<double> v(smoothed.values().begin(), smoothed.values().end());
  for (auto& x : v) x -= mean_;
  return RealPlane(plane.width(), plane.height(), std::move(v));
}

}  // namespace flep
