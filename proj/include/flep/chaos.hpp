#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flep {

// Transient iterations discarded before any value is used.
inline constexpr std::size_t kChaosBurnIn = 1000;

/// Logistic-map orbit x_{k+1} = r x_k (1 - x_k) after a burn-in.
struct ChaoticSequence {
  double seed = 0.0;
  double param = 0.0;
  std::size_t burn_in = 0;
  std::vector<double> values;  // every entry in (0, 1)
};

// Throws KeyError for x0 outside (0,1), r outside [3.9,4.0), n == 0, or an
// orbit that reaches 0 or a fixed point exactly.
ChaoticSequence logistic_sequence(double x0, double r, std::size_t burn_in, std::size_t n);

// byte_k = floor(values_k * 2^53) mod 256, i.e. the low mantissa byte.
std::vector<std::uint8_t> keystream_bytes(std::span<const double> values, std::size_t n);

inline std::vector<std::uint8_t> keystream_bytes(const ChaoticSequence& seq, std::size_t n) {
  return keystream_bytes(seq.values, n);
}

}  // namespace flep
