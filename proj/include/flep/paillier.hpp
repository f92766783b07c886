#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace flep::he {

/// Paillier public key with generator g = n + 1.
struct PublicKey {
  mpz_class n;
  mpz_class n_squared;
  std::size_t bits = 0;
  std::string key_id;

  mpz_class g() const { return n + 1; }
  static PublicKey from_modulus(const mpz_class& n);
};

struct PrivateKey {
  mpz_class lambda;  // lcm(p - 1, q - 1)
  mpz_class mu;      // lambda^-1 mod n
};

struct HEKeyPair {
  PublicKey pub;
  PrivateKey priv;

  // Distinct primes only; used for toy keys and tests.
  static HEKeyPair from_primes(const mpz_class& p, const mpz_class& q);
};

struct Ciphertext {
  mpz_class value;
  std::string key_id;

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.value == b.value && a.key_id == b.key_id;
  }
};

/// Source of encryption nonces r in [1, n) with gcd(r, n) = 1.
class NonceSource {
 public:
  virtual ~NonceSource() = default;
  virtual mpz_class draw(const mpz_class& n) = 0;
};

// Reproducible nonces (Mersenne Twister inside GMP).
class SeededNonceSource final : public NonceSource {
 public:
  explicit SeededNonceSource(std::uint64_t seed);
  mpz_class draw(const mpz_class& n) override;

 private:
  gmp_randclass rng_;
};

// Nonces seeded from the operating system entropy source.
class OsNonceSource final : public NonceSource {
 public:
  mpz_class draw(const mpz_class& n) override;

 private:
  std::random_device device_;
};

// bit_length must be 512, 1024 or 2048. Without a seed, primes are drawn
// from OS entropy.
HEKeyPair keygen(std::size_t bit_length, std::optional<std::uint64_t> seed = std::nullopt);

Ciphertext encrypt(const mpz_class& m, const PublicKey& pub, NonceSource& nonces);
Ciphertext encrypt_with_nonce(const mpz_class& m, const PublicKey& pub, const mpz_class& r);
mpz_class decrypt(const Ciphertext& c, const HEKeyPair& keys);

// Plaintexts add: decrypt(he_add(E(a), E(b))) = a + b mod n.
Ciphertext he_add(const Ciphertext& a, const Ciphertext& b, const PublicKey& pub);
// decrypt(he_scalar_mul(E(t), k)) = k t mod n.
Ciphertext he_scalar_mul(const Ciphertext& c, const mpz_class& k, const PublicKey& pub);

std::string to_hex(const mpz_class& v);
mpz_class from_hex(std::string_view hex);

std::string serialize_public_key(const PublicKey& pub);
PublicKey parse_public_key(std::string_view text);
std::string serialize_keypair(const HEKeyPair& keys);
HEKeyPair parse_keypair(std::string_view text);
std::string serialize_ciphertexts(const std::vector<Ciphertext>& cts);
std::vector<Ciphertext> parse_ciphertexts(std::string_view text);

}  // namespace flep::he
