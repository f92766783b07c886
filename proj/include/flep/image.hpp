#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace flep {

/// 8-bit single-channel raster stored row-major.
///
/// Construction validates the shape: both sides must be at least 2 and the
/// pixel buffer must hold exactly width * height values.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  // Copy with one pixel replaced.
  GrayImage with_pixel(std::size_t x, std::size_t y, std::uint8_t value) const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Real-valued plane (double precision), row-major; every value finite.
class RealPlane {
 public:
  RealPlane(std::size_t width, std::size_t height, std::vector<double> values);

  static RealPlane zeros(std::size_t width, std::size_t height);
  static RealPlane from_image(const GrayImage& img);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const RealPlane&, const RealPlane&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

// Binary PGM (P5, maxval 255) IO.
GrayImage load_pgm(const std::filesystem::path& path);
GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace flep
