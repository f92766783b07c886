#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flep/image.hpp"

namespace flep {

/// Additive white Gaussian noise parameters; fully determines the noise field.
struct NoiseSpec {
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t seed = 0;
};

// Noise field for a plane of `count` values. Generation order is frozen:
// splitmix64 stream -> 53-bit uniforms in (0, 1] -> Box-Muller pairs, cosine
// branch first, assigned in raster order. Each sample is rounded to a
// multiple of 2^-32 so that adding and subtracting it is exact for planes on
// the same grid.
std::vector<double> noise_field(const NoiseSpec& spec, std::size_t count);

RealPlane inject_noise(const RealPlane& plane, const NoiseSpec& spec);
RealPlane denoise_exact(const RealPlane& plane, const NoiseSpec& spec);

// Gaussian smoothing with reflected borders. radius >= 1 and at most half the
// smaller plane side.
RealPlane denoise_filter(const RealPlane& plane, std::size_t radius, double sigma);

// Normalised 1-D kernel of length 2 * radius + 1.
std::vector<double> gaussian_kernel(std::size_t radius, double sigma);

/// Analyst-side denoising stage.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual std::string name() const = 0;
  virtual RealPlane denoise(const RealPlane& plane) const = 0;
};

class ExactSubtractionDenoiser final : public Denoiser {
 public:
  explicit ExactSubtractionDenoiser(NoiseSpec spec) : spec_(spec) {}
  std::string name() const override { return "exact-subtraction"; }
  RealPlane denoise(const RealPlane& plane) const override { return denoise_exact(plane, spec_); }

 private:
  NoiseSpec spec_;
};

// Used when the noise seed is not available; removes the mean offset and
// smooths. Lossy.
class GaussianFilterDenoiser final : public Denoiser {
 public:
  GaussianFilterDenoiser(std::size_t radius, double sigma, double mean = 0.0)
      : radius_(radius), sigma_(sigma), mean_(mean) {}
  std::string name() const override { return "gaussian-filter"; }
  RealPlane denoise(const RealPlane& plane) const override;

 private:
  std::size_t radius_;
  double sigma_;
  double mean_;
};

}  // namespace flep
