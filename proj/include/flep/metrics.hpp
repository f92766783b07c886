#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "flep/image.hpp"
#include "flep/key_bundle.hpp"
#include "flep/pipeline.hpp"

namespace flep {

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(const GrayImage& img);

// Affine min-max map onto [0, 255], ties rounded to even. A constant plane
// renders as all zeros.
GrayImage render_8bit(const RealPlane& plane);

// Percent of positions that differ.
double npcr(const GrayImage& a, const GrayImage& b);
// Mean absolute difference over 255, in percent.
double uaci(const GrayImage& a, const GrayImage& b);
// Shannon entropy of the 256-bin histogram, in bits.
double entropy(const GrayImage& img);
// Sum over v of |H_cipher(v) - H_plain(v)|, divided by 256.
double encryption_quality(const GrayImage& plain, const GrayImage& cipher);
// Pearson chi-square against a flat histogram; needs at least 256 pixels.
double chi_square_uniformity(const GrayImage& img);

// Critical value of chi-square with 255 degrees of freedom at the 0.05 level.
inline constexpr double kChiSquare255Critical = 293.25;

struct MetricsReport {
  std::size_t width = 0;
  std::size_t height = 0;
  double npcr = 0.0;                // percent
  double uaci = 0.0;                // percent
  double entropy = 0.0;             // bits
  double encryption_quality = 0.0;
  double chi_square = 0.0;
  double encrypt_time = 0.0;        // seconds, median
  double decrypt_time = 0.0;        // seconds, median
  bool lossless = false;            // decrypt(encrypt(plain)) == plain

  double total_time() const noexcept { return encrypt_time + decrypt_time; }
};

struct EvaluateOptions {
  PipelineConfig pipeline;
  // Drives the position and new value of the one-pixel plaintext change.
  std::uint64_t perturbation_seed = 0;
  std::size_t timing_runs = 5;
};

/// One pixel changed in `plain`, chosen by a splitmix64 stream from `seed`:
/// first draw picks the raster index (mod W*H), second picks an offset
/// 1..255 added to the old value mod 256.
GrayImage perturb_one_pixel(const GrayImage& plain, std::uint64_t seed);

MetricsReport evaluate(const GrayImage& plain, const KeyBundle& key, const GrayImage& secret,
                       const EvaluateOptions& options = {});

std::string report_to_json(const MetricsReport& report);
std::string report_to_table(const MetricsReport& report, const std::string& label = "image");

}  // namespace flep
