#include "flep/fixed_point.hpp"

#include <cmath>

#include "flep/errors.hpp"

namespace flep::he {

mpz_class encode_fixed(double x, unsigned frac_bits, const mpz_class& n) {
  if (!std::isfinite(x)) throw Error("fixed-point encode: value is not finite");
  mpz_class v;
  mpz_set_d(v.get_mpz_t(), std::round(std::ldexp(x, static_cast<int>(frac_bits))));
  mpz_class magnitude = abs(v);
  if (2 * magnitude >= n) throw Error("fixed-point encode: overflow, |x| * scale >= n / 2");
  if (v < 0) v += n;
  return v;
}

double decode_fixed(const mpz_class& v, unsigned frac_bits, const mpz_class& n) {
  if (v < 0 || v >= n) throw Error("fixed-point decode: value outside [0, n)");
  mpz_class s = v;
  if (2 * s >= n) s -= n;
  return std::ldexp(mpz_get_d(s.get_mpz_t()), -static_cast<int>(frac_bits));
}

}  // namespace flep::he
