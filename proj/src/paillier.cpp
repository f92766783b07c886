#include "flep/paillier.hpp"

#include <json.hpp>

#include "flep/digest.hpp"
#include "flep/errors.hpp"

namespace flep::he {

namespace {

constexpr int kPrimeReps = 40;
constexpr int kMaxPrimeAttempts = 10000;

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

bool is_prime(const mpz_class& v) { return mpz_probab_prime_p(v.get_mpz_t(), kPrimeReps) > 0; }

std::string modulus_id(const mpz_class& n) {
  const std::string hex = to_hex(n);
  const auto d = sha256(std::span(reinterpret_cast<const std::uint8_t*>(hex.data()), hex.size()));
  return flep::to_hex(std::span(d).first(8));
}

// Prime of exactly `bits` bits with the top two bits set, so p*q has 2*bits bits.
mpz_class random_prime(std::size_t bits, gmp_randclass& rng) {
  for (int attempt = 0; attempt < kMaxPrimeAttempts; ++attempt) {
    mpz_class candidate = rng.get_z_bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (is_prime(candidate)) return candidate;
  }
  throw KeyError("prime generation failed after bounded retries");
}

void check_same_key(const Ciphertext& c, const PublicKey& pub) {
  if (c.key_id != pub.key_id) throw KeyError("ciphertext was produced under a different key");
  if (c.value < 1 || c.value >= pub.n_squared) throw KeyError("ciphertext outside [1, n^2)");
}

}  // namespace

PublicKey PublicKey::from_modulus(const mpz_class& n) {
  if (n < 6) throw KeyError("modulus too small");
  return {n, n * n, mpz_sizeinbase(n.get_mpz_t(), 2), modulus_id(n)};
}

HEKeyPair HEKeyPair::from_primes(const mpz_class& p, const mpz_class& q) {
  if (p == q) throw KeyError("primes must be distinct");
  if (!is_prime(p) || !is_prime(q)) throw KeyError("p and q must both be prime");
  const mpz_class n = p * q;
  mpz_class lambda;
  mpz_lcm(lambda.get_mpz_t(), mpz_class(p - 1).get_mpz_t(), mpz_class(q - 1).get_mpz_t());
  if (gcd(n, (p - 1) * (q - 1)) != 1) throw KeyError("gcd(n, phi(n)) != 1");
  mpz_class mu;
  if (mpz_invert(mu.get_mpz_t(), lambda.get_mpz_t(), n.get_mpz_t()) == 0) {
    throw KeyError("lambda is not invertible mod n");
  }
  return {PublicKey::from_modulus(n), {lambda, mu}};
}

SeededNonceSource::SeededNonceSource(std::uint64_t seed) : rng_(gmp_randinit_mt) {
  mpz_class s;
  mpz_import(s.get_mpz_t(), 1, 1, sizeof seed, 0, 0, &seed);
  rng_.seed(s);
}

mpz_class SeededNonceSource::draw(const mpz_class& n) {
  for (;;) {
    mpz_class r = rng_.get_z_range(n);
    if (r > 1 && gcd(r, n) == 1) return r;
  }
}

mpz_class OsNonceSource::draw(const mpz_class& n) {
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2) + 64;
  for (;;) {
    mpz_class r = 0;
    for (std::size_t got = 0; got < bits; got += 32) {
      r <<= 32;
      r += static_cast<unsigned long>(device_());
    }
    r %= n;
    if (r > 1 && gcd(r, n) == 1) return r;
  }
}

HEKeyPair keygen(std::size_t bit_length, std::optional<std::uint64_t> seed) {
  if (bit_length != 512 && bit_length != 1024 && bit_length != 2048) {
    throw KeyError("unsupported size " + std::to_string(bit_length) +
                   " (expected 512, 1024 or 2048 bits)");
  }
  gmp_randclass rng(gmp_randinit_mt);
  std::uint64_t s = seed ? *seed : (std::uint64_t{std::random_device{}()} << 32 | std::random_device{}());
  mpz_class sz;
  mpz_import(sz.get_mpz_t(), 1, 1, sizeof s, 0, 0, &s);
  rng.seed(sz);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const mpz_class p = random_prime(bit_length / 2, rng);
    const mpz_class q = random_prime(bit_length / 2, rng);
    if (p == q) continue;
    auto keys = HEKeyPair::from_primes(p, q);
    if (keys.pub.bits == bit_length) return keys;
  }
  throw KeyError("key generation failed after bounded retries");
}

Ciphertext encrypt_with_nonce(const mpz_class& m, const PublicKey& pub, const mpz_class& r) {
  if (m < 0 || m >= pub.n) throw KeyError("plaintext outside [0, n)");
  if (r < 1 || r >= pub.n || gcd(r, pub.n) != 1) throw KeyError("nonce must be a unit mod n");
  // (n + 1)^m = 1 + m n (mod n^2)
  mpz_class gm = (1 + m * pub.n) % pub.n_squared;
  mpz_class c = (gm * powm(r, pub.n, pub.n_squared)) % pub.n_squared;
  return {std::move(c), pub.key_id};
}

Ciphertext encrypt(const mpz_class& m, const PublicKey& pub, NonceSource& nonces) {
  return encrypt_with_nonce(m, pub, nonces.draw(pub.n));
}

mpz_class decrypt(const Ciphertext& c, const HEKeyPair& keys) {
  check_same_key(c, keys.pub);
  const mpz_class u = powm(c.value, keys.priv.lambda, keys.pub.n_squared);
  const mpz_class l = (u - 1) / keys.pub.n;
  return (l * keys.priv.mu) % keys.pub.n;
}

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b, const PublicKey& pub) {
  check_same_key(a, pub);
  check_same_key(b, pub);
  return {(a.value * b.value) % pub.n_squared, pub.key_id};
}

Ciphertext he_scalar_mul(const Ciphertext& c, const mpz_class& k, const PublicKey& pub) {
  check_same_key(c, pub);
  if (k < 0) throw KeyError("scalar must be non-negative");
  return {powm(c.value, k, pub.n_squared), pub.key_id};
}

std::string to_hex(const mpz_class& v) { return v.get_str(16); }

mpz_class from_hex(std::string_view hex) {
  if (hex.empty()) throw ParseError("empty hex integer");
  for (char ch : hex) {
    if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f'))) {
      throw ParseError("big integers must be lowercase hex");
    }
  }
  return mpz_class(std::string(hex), 16);
}

namespace {

nlohmann::json parse_json(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string hex_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_string()) {
    throw ParseError(std::string("missing hex field \"") + name + "\"");
  }
  return j[name].get<std::string>();
}

}  // namespace

std::string serialize_public_key(const PublicKey& pub) {
  nlohmann::ordered_json j;
  j["format"] = "flep-he-public";
  j["key_id"] = pub.key_id;
  j["bits"] = pub.bits;
  j["n"] = to_hex(pub.n);
  j["g"] = to_hex(pub.g());
  return j.dump(2) + "\n";
}

PublicKey parse_public_key(std::string_view text) {
  const auto j = parse_json(text, "public key");
  auto pub = PublicKey::from_modulus(from_hex(hex_field(j, "n")));
  if (j.contains("g") && from_hex(hex_field(j, "g")) != pub.g()) throw ParseError("g must be n + 1");
  return pub;
}

std::string serialize_keypair(const HEKeyPair& keys) {
  nlohmann::ordered_json j;
  j["format"] = "flep-he-keypair";
  j["key_id"] = keys.pub.key_id;
  j["bits"] = keys.pub.bits;
  j["n"] = to_hex(keys.pub.n);
  j["g"] = to_hex(keys.pub.g());
  j["lambda"] = to_hex(keys.priv.lambda);
  j["mu"] = to_hex(keys.priv.mu);
  return j.dump(2) + "\n";
}

HEKeyPair parse_keypair(std::string_view text) {
  const auto j = parse_json(text, "keypair");
  HEKeyPair keys{PublicKey::from_modulus(from_hex(hex_field(j, "n"))),
                 {from_hex(hex_field(j, "lambda")), from_hex(hex_field(j, "mu"))}};
  const mpz_class check = (keys.priv.lambda * keys.priv.mu) % keys.pub.n;
  if (check != 1) throw ParseError("keypair: mu is not the inverse of lambda mod n");
  return keys;
}

std::string serialize_ciphertexts(const std::vector<Ciphertext>& cts) {
  nlohmann::ordered_json j;
  j["format"] = "flep-he-ciphertexts";
  j["key_id"] = cts.empty() ? std::string() : cts.front().key_id;
  auto arr = nlohmann::json::array();
  for (const auto& c : cts) {
    if (c.key_id != j["key_id"].get<std::string>()) {
      throw KeyError("ciphertext vector mixes keys");
    }
    arr.push_back(to_hex(c.value));
  }
  j["values"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::vector<Ciphertext> parse_ciphertexts(std::string_view text) {
  const auto j = parse_json(text, "ciphertexts");
  if (!j.contains("key_id") || !j.contains("values") || !j["values"].is_array()) {
    throw ParseError("ciphertexts: missing key_id or values");
  }
  const auto id = j["key_id"].get<std::string>();
  std::vector<Ciphertext> out;
  for (const auto& v : j["values"]) {
    if (!v.is_string()) throw ParseError("ciphertexts: values must be hex strings");
    out.push_back({from_hex(v.get<std::string>()), id});
  }
  return out;
}

}  // namespace flep::he
