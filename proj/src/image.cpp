#include "flep/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "flep/errors.hpp"

namespace flep {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ < 2 || height_ < 2) {
    throw DimensionError("image must be at least 2x2, got " + std::to_string(width_) + "x" +
                         std::to_string(height_));
  }
  if (pixels_.size() != width_ * height_) {
    throw DimensionError("pixel count " + std::to_string(pixels_.size()) +
                         " does not match " + std::to_string(width_) + "x" +
                         std::to_string(height_));
  }
}

GrayImage GrayImage::with_pixel(std::size_t x, std::size_t y, std::uint8_t value) const {
  if (x >= width_ || y >= height_) throw DimensionError("pixel position out of range");
  auto copy = pixels_;
  copy[y * width_ + x] = value;
  return GrayImage(width_, height_, std::move(copy));
}

RealPlane::RealPlane(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width_ == 0 || height_ == 0) throw DimensionError("plane must be non-empty");
  if (values_.size() != width_ * height_) {
    throw DimensionError("value count " + std::to_string(values_.size()) +
                         " does not match " + std::to_string(width_) + "x" +
                         std::to_string(height_));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DimensionError("plane contains a non-finite value");
  }
}

RealPlane RealPlane::zeros(std::size_t width, std::size_t height) {
  return RealPlane(width, height, std::vector<double>(width * height, 0.0));
}

RealPlane RealPlane::from_image(const GrayImage& img) {
  std::vector<double> v(img.pixels().begin(), img.pixels().end());
  return RealPlane(img.width(), img.height(), std::move(v));
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one token.
  std::string token() {
    for (;;) {
      while (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (out.empty()) throw ParseError("pgm: malformed header (unexpected end)");
    return out;
  }

  std::size_t number(const char* what) {
    const std::string t = token();
    std::size_t value = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("pgm: malformed header (bad ") + what + " '" + t + "')");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value > (std::size_t{1} << 31)) {
        throw ParseError(std::string("pgm: malformed header (") + what + " too large)");
      }
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ParseError("pgm: malformed header (missing separator before raster)");
    }
    return pos_ + 1;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader reader(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ParseError("pgm: bad magic (expected binary P5)");
  }
  reader.token();
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  if (maxval != 255) throw ParseError("pgm: unsupported maxval " + std::to_string(maxval));
  if (width < 2 || height < 2) throw ParseError("pgm: malformed header (image smaller than 2x2)");
  const std::size_t start = reader.raster_start();
  const std::size_t need = width * height;
  if (bytes.size() < start + need) {
    throw ParseError("pgm: truncated data (expected " + std::to_string(need) + " bytes, got " +
                     std::to_string(bytes.size() > start ? bytes.size() - start : 0) + ")");
  }
  std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                               bytes.begin() + static_cast<std::ptrdiff_t>(start + need));
  return GrayImage(width, height, std::move(px));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace flep
