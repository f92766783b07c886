#pragma once

#include <gmpxx.h>

namespace flep::he {

inline constexpr unsigned kDefaultFracBits = 16;

// round(x * 2^frac_bits) as an element of Z_n, negatives stored as n - |v|.
// Throws if |round(x * 2^f)| >= n / 2 or x is not finite.
mpz_class encode_fixed(double x, unsigned frac_bits, const mpz_class& n);

// Values >= n/2 are read as negative.
double decode_fixed(const mpz_class& v, unsigned frac_bits, const mpz_class& n);

}  // namespace flep::he
