#include "flep/chaos.hpp"

#include <cmath>
#include <string>

#include "flep/errors.hpp"

namespace flep {

ChaoticSequence logistic_sequence(double x0, double r, std::size_t burn_in, std::size_t n) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw KeyError("logistic seed must lie in (0, 1)");
  if (!(r >= 3.9 && r < 4.0)) throw KeyError("logistic parameter must lie in [3.9, 4.0)");
  if (n == 0) throw KeyError("logistic sequence length must be >= 1");

  const double fixed = 1.0 - 1.0 / r;
  ChaoticSequence seq{x0, r, burn_in, {}};
  seq.values.reserve(n);
  double x = x0;
  for (std::size_t k = 0; k < burn_in + n; ++k) {
    const double prev = x;
    x = r * x * (1.0 - x);
    if (x <= 0.0 || x >= 1.0 || x == fixed || x == prev) {
      throw KeyError("degenerate logistic orbit at iteration " + std::to_string(k + 1));
    }
    if (k >= burn_in) seq.values.push_back(x);
  }
  return seq;
}

std::vector<std::uint8_t> keystream_bytes(std::span<const double> values, std::size_t n) {
  if (values.size() < n) {
    throw KeyError("keystream needs " + std::to_string(n) + " chaotic values, have " +
                   std::to_string(values.size()));
  }
  std::vector<std::uint8_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scaled = std::floor(std::ldexp(values[k], 53));
    out[k] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(scaled) & 0xff);
  }
  return out;
}

}  // namespace flep
