#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flep/chaos.hpp"
#include "flep/errors.hpp"
#include "flep/image.hpp"
#include "flep/key_bundle.hpp"

namespace flep {

// Raster indices of an s x s block in clockwise inward spiral order,
// starting at the top-left corner.
std::vector<std::size_t> spiral_order(std::size_t side);

template <typename T>
std::vector<T> spiral_scan(std::span<const T> block, std::size_t rows, std::size_t cols) {
  if (rows != cols) throw DimensionError("spiral scan needs a square block");
  if (rows < 2) throw DimensionError("spiral scan needs a block side of at least 2");
  if (block.size() != rows * cols) throw DimensionError("block size does not match its shape");
  std::vector<T> out;
  out.reserve(block.size());
  for (std::size_t idx : spiral_order(rows)) out.push_back(block[idx]);
  return out;
}

// Returns the s x s block, row-major.
template <typename T>
std::vector<T> inverse_spiral(std::span<const T> flat, std::size_t side) {
  if (side < 2) throw DimensionError("inverse spiral needs a block side of at least 2");
  if (flat.size() != side * side) throw DimensionError("inverse spiral: length is not side^2");
  std::vector<T> out(flat.size());
  const auto order = spiral_order(side);
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = flat[k];
  return out;
}

/// Block reordering: input block i lands in output slot forward[i].
struct BlockPermutation {
  std::size_t block_side = 0;
  std::vector<std::size_t> forward;

  std::size_t n_blocks() const noexcept { return forward.size(); }
  std::vector<std::size_t> inverse() const;
};

// forward[i] = rank of values[i] in an ascending sort; ties go to the lower index.
BlockPermutation derive_permutation(std::span<const double> values, std::size_t block_side = 0);

/// Positions of the key material inside the chaotic orbit for a W x H image:
/// [0, N) forward keystream, [N, 2N) backward keystream, [2N, 2N + blocks)
/// group keys, where N = W * H.
struct OrbitLayout {
  std::size_t pixels = 0;
  std::size_t blocks = 0;
  std::size_t total() const noexcept { return 2 * pixels + blocks; }
};

// Group keys for an image of the given size (also stored in the key bundle).
std::vector<double> derive_group_keys(const KeyBundle& key, std::size_t width, std::size_t height);

// Copy of the bundle with its group keys filled in for the given image size.
KeyBundle bind_group_keys(const KeyBundle& key, std::size_t width, std::size_t height);

GrayImage scramble(const GrayImage& img, const KeyBundle& key);
GrayImage descramble(const GrayImage& img, const KeyBundle& key);

// Value diffusion: a forward raster pass then a backward pass, each XORing a
// chaotic keystream byte and the low byte of a 64-bit running state that
// absorbs every processed pixel.
GrayImage diffuse(const GrayImage& img, const KeyBundle& key);
GrayImage undiffuse(const GrayImage& img, const KeyBundle& key);

// Same passes with explicit keystreams; each must hold img.size() bytes.
GrayImage diffuse_with(const GrayImage& img, std::span<const std::uint8_t> forward_ks,
                       std::span<const std::uint8_t> backward_ks, std::uint8_t iv);
GrayImage undiffuse_with(const GrayImage& img, std::span<const std::uint8_t> forward_ks,
                         std::span<const std::uint8_t> backward_ks, std::uint8_t iv);

}  // namespace flep
