#pragma once

// Independent reference implementations used only by tests. None of them
// calls into the code they check.

#include <array>
#include <cstdint>
#include <vector>

namespace flep::oracle {

// Row-major dense matrix helper.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

struct Subbands {
  std::size_t width = 0, height = 0;  // subband size
  std::vector<double> ll, lh, hl, hh;
};

// Haar analysis by explicit orthonormal matrices: Y = A_h * X * A_w^T, where
// A_k stacks the k/2 low-pass rows over the k/2 high-pass rows.
Subbands dwt2_reference(std::size_t width, std::size_t height, const std::vector<double>& x);

// Exhaustive Paillier check with 64-bit integers; p * q must be < 2^16.
// `mu_offset` corrupts mu for negative controls. Throws on p == q.
bool paillier_exhaustive_check(std::uint64_t p, std::uint64_t q, std::uint64_t mu_offset = 0);

// Textbook Paillier pieces with g = n + 1 for small moduli.
struct ToyPaillier {
  std::uint64_t n, n2, lambda, mu;
  explicit ToyPaillier(std::uint64_t p, std::uint64_t q);
  std::uint64_t encrypt(std::uint64_t m, std::uint64_t r) const;
  std::uint64_t decrypt(std::uint64_t c) const;
};

struct MetricFields {
  double npcr, uaci, entropy, encryption_quality;
};

MetricFields metrics_reference(std::size_t width, std::size_t height,
                               const std::vector<std::uint8_t>& c1,
                               const std::vector<std::uint8_t>& c2,
                               const std::vector<std::uint8_t>& plain);

// Rank by counting: rank(i) = #{j : v_j < v_i or (v_j == v_i and j < i)}.
std::vector<std::size_t> rank_reference(const std::vector<double>& v);

// Spiral order by walking and turning right at walls or visited cells.
std::vector<std::size_t> spiral_reference(std::size_t side);

// floor(x * 2^53) mod 256 from the exact mantissa/exponent decomposition.
std::uint8_t keystream_byte_reference(double x);

}  // namespace flep::oracle
