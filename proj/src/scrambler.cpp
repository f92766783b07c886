#include "flep/scrambler.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace flep {

std::vector<std::size_t> spiral_order(std::size_t side) {
  std::vector<std::size_t> order;
  order.reserve(side * side);
  std::size_t top = 0, left = 0, bottom = side, right = side;  // half-open bounds
  while (top < bottom && left < right) {
    for (std::size_t c = left; c < right; ++c) order.push_back(top * side + c);
    ++top;
    for (std::size_t r = top; r < bottom; ++r) order.push_back(r * side + right - 1);
    --right;
    if (top < bottom) {
      for (std::size_t c = right; c-- > left;) order.push_back((bottom - 1) * side + c);
      --bottom;
    }
    if (left < right) {
      for (std::size_t r = bottom; r-- > top;) order.push_back(r * side + left);
      ++left;
    }
  }
  return order;
}

std::vector<std::size_t> BlockPermutation::inverse() const {
  std::vector<std::size_t> inv(forward.size());
  for (std::size_t i = 0; i < forward.size(); ++i) inv[forward[i]] = i;
  return inv;
}

BlockPermutation derive_permutation(std::span<const double> values, std::size_t block_side) {
  std::vector<std::size_t> by_value(values.size());
  std::iota(by_value.begin(), by_value.end(), std::size_t{0});
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  BlockPermutation perm{block_side, std::vector<std::size_t>(values.size())};
  for (std::size_t rank = 0; rank < by_value.size(); ++rank) perm.forward[by_value[rank]] = rank;
  return perm;
}

namespace {

struct BlockGrid {
  std::size_t side, cols, rows;
  std::size_t count() const { return cols * rows; }
};

BlockGrid block_grid(std::size_t width, std::size_t height, std::size_t side) {
  if (side < 2 || side > width || side > height || width % side != 0 || height % side != 0) {
    throw DimensionError("block side " + std::to_string(side) + " does not divide " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  return {side, width / side, height / side};
}

std::vector<double> chaos_orbit(const KeyBundle& key, std::size_t n) {
  return logistic_sequence(key.chaos_seed(), key.chaos_param(), kChaosBurnIn, n).values;
}

std::vector<double> group_keys_for(const KeyBundle& key, const OrbitLayout& layout) {
  auto orbit = chaos_orbit(key, layout.total());
  std::vector<double> keys(orbit.begin() + static_cast<std::ptrdiff_t>(2 * layout.pixels),
                           orbit.end());
  if (!key.group_keys().empty() && key.group_keys() != keys) {
    throw KeyError("stored group keys do not match the chaos seed and image size");
  }
  return keys;
}

BlockPermutation permutation_for(const GrayImage& img, const KeyBundle& key, const BlockGrid& grid) {
  const OrbitLayout layout{img.size(), grid.count()};
  return derive_permutation(group_keys_for(key, layout), grid.side);
}

// Copies the raster of block `b` into `out` (size side^2).
void read_block(const GrayImage& img, const BlockGrid& g, std::size_t b, std::uint8_t* out) {
  const std::size_t x0 = (b % g.cols) * g.side, y0 = (b / g.cols) * g.side;
  const auto px = img.pixels();
  for (std::size_t y = 0; y < g.side; ++y) {
    std::copy_n(px.begin() + static_cast<std::ptrdiff_t>((y0 + y) * img.width() + x0), g.side,
                out + y * g.side);
  }
}

void write_block(std::vector<std::uint8_t>& dst, std::size_t width, const BlockGrid& g,
                 std::size_t b, const std::uint8_t* in) {
  const std::size_t x0 = (b % g.cols) * g.side, y0 = (b / g.cols) * g.side;
  for (std::size_t y = 0; y < g.side; ++y) {
    std::copy_n(in + y * g.side, g.side, dst.begin() + static_cast<std::ptrdiff_t>((y0 + y) * width + x0));
  }
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_keystreams(std::size_t n, std::span<const std::uint8_t> f, std::span<const std::uint8_t> b) {
  if (f.size() < n || b.size() < n) throw KeyError("diffusion keystream shorter than the image");
}

}  // namespace

std::vector<double> derive_group_keys(const KeyBundle& key, std::size_t width, std::size_t height) {
  const auto grid = block_grid(width, height, key.block_side());
  auto orbit = chaos_orbit(key, OrbitLayout{width * height, grid.count()}.total());
  return {orbit.begin() + static_cast<std::ptrdiff_t>(2 * width * height), orbit.end()};
}

KeyBundle bind_group_keys(const KeyBundle& key, std::size_t width, std::size_t height) {
  return key.with_group_keys(derive_group_keys(key, width, height));
}

GrayImage scramble(const GrayImage& img, const KeyBundle& key) {
  const auto grid = block_grid(img.width(), img.height(), key.block_side());
  const auto perm = permutation_for(img, key, grid);
  const auto order = spiral_order(grid.side);
  std::vector<std::uint8_t> out(img.size());
  std::vector<std::uint8_t> block(grid.side * grid.side), scanned(block.size());
  for (std::size_t b = 0; b < grid.count(); ++b) {
    read_block(img, grid, b, block.data());
    for (std::size_t k = 0; k < order.size(); ++k) scanned[k] = block[order[k]];
    write_block(out, img.width(), grid, perm.forward[b], scanned.data());
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage descramble(const GrayImage& img, const KeyBundle& key) {
  const auto grid = block_grid(img.width(), img.height(), key.block_side());
  const auto perm = permutation_for(img, key, grid);
  const auto order = spiral_order(grid.side);
  std::vector<std::uint8_t> out(img.size());
  std::vector<std::uint8_t> scanned(grid.side * grid.side), block(scanned.size());
  for (std::size_t b = 0; b < grid.count(); ++b) {
    read_block(img, grid, perm.forward[b], scanned.data());
    for (std::size_t k = 0; k < order.size(); ++k) block[order[k]] = scanned[k];
    write_block(out, img.width(), grid, b, block.data());
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage diffuse_with(const GrayImage& img, std::span<const std::uint8_t> forward_ks,
                       std::span<const std::uint8_t> backward_ks, std::uint8_t iv) {
  const std::size_t n = img.size();
  check_keystreams(n, forward_ks, backward_ks);
  const auto p = img.pixels();
  std::vector<std::uint8_t> c(n), d(n);
  std::uint64_t state = iv;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<std::uint8_t>(p[i] ^ forward_ks[i] ^ (state & 0xff));
    state = mix64(state ^ c[i]);
  }
  state = iv;
  for (std::size_t i = n; i-- > 0;) {
    d[i] = static_cast<std::uint8_t>(c[i] ^ backward_ks[i] ^ (state & 0xff));
    state = mix64(state ^ c[i]);
  }
  return GrayImage(img.width(), img.height(), std::move(d));
}

GrayImage undiffuse_with(const GrayImage& img, std::span<const std::uint8_t> forward_ks,
                         std::span<const std::uint8_t> backward_ks, std::uint8_t iv) {
  const std::size_t n = img.size();
  check_keystreams(n, forward_ks, backward_ks);
  const auto d = img.pixels();
  std::vector<std::uint8_t> c(n), p(n);
  std::uint64_t state = iv;
  for (std::size_t i = n; i-- > 0;) {
    c[i] = static_cast<std::uint8_t>(d[i] ^ backward_ks[i] ^ (state & 0xff));
    state = mix64(state ^ c[i]);
  }
  state = iv;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = static_cast<std::uint8_t>(c[i] ^ forward_ks[i] ^ (state & 0xff));
    state = mix64(state ^ c[i]);
  }
  return GrayImage(img.width(), img.height(), std::move(p));
}

namespace {

std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> diffusion_keystreams(
    const KeyBundle& key, std::size_t n) {
  const auto orbit = chaos_orbit(key, 2 * n);
  auto bytes = keystream_bytes(orbit, 2 * n);
  std::vector<std::uint8_t> backward(bytes.begin() + static_cast<std::ptrdiff_t>(n), bytes.end());
  bytes.resize(n);
  return {std::move(bytes), std::move(backward)};
}

}  // namespace

GrayImage diffuse(const GrayImage& img, const KeyBundle& key) {
  const auto [fwd, bwd] = diffusion_keystreams(key, img.size());
  return diffuse_with(img, fwd, bwd, key.diffusion_iv());
}

GrayImage undiffuse(const GrayImage& img, const KeyBundle& key) {
  const auto [fwd, bwd] = diffusion_keystreams(key, img.size());
  return undiffuse_with(img, fwd, bwd, key.diffusion_iv());
}

}  // namespace flep
