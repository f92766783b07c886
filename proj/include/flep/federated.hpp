#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flep/fixed_point.hpp"
#include "flep/paillier.hpp"

namespace flep::he {

/// A participant: holds only the public key; encodes and encrypts its weights.
class Client {
 public:
  Client(PublicKey pub, unsigned frac_bits, std::size_t max_clients);
  std::vector<Ciphertext> submit(std::span<const double> weights, NonceSource& nonces) const;

 private:
  PublicKey pub_;
  unsigned frac_bits_;
  std::size_t max_clients_;
};

/// Untrusted aggregator. It is constructed from a public key only and never
/// sees plaintext or the private key.
class Aggregator {
 public:
  explicit Aggregator(PublicKey pub) : pub_(std::move(pub)) {}

  // Elementwise homomorphic sum, folding clients in ascending index order.
  std::vector<Ciphertext> aggregate(const std::vector<std::vector<Ciphertext>>& updates) const;

  const PublicKey& public_key() const noexcept { return pub_; }

 private:
  PublicKey pub_;
};

/// Trusted party holding the key pair.
class Decryptor {
 public:
  Decryptor(HEKeyPair keys, unsigned frac_bits) : keys_(std::move(keys)), frac_bits_(frac_bits) {}
  std::vector<double> average(std::span<const Ciphertext> sums, std::size_t client_count) const;

 private:
  HEKeyPair keys_;
  unsigned frac_bits_;
};

struct FlRoundResult {
  std::vector<double> average;         // decrypted FedAvg
  std::vector<double> plaintext_mean;  // reference computed in the clear
  std::vector<Ciphertext> encrypted_sum;
  double max_abs_error = 0.0;
};

// One secure-aggregation round over equal-length client weight vectors.
FlRoundResult fl_round(const std::vector<std::vector<double>>& clients, const HEKeyPair& keys,
                       unsigned frac_bits, NonceSource& nonces);

std::vector<double> plaintext_fedavg(const std::vector<std::vector<double>>& clients);

/// fl-sim scenario: client_count clients each with vector_length weights in
/// [-1, 1] drawn from seed.
struct FlScenario {
  std::size_t client_count = 5;
  std::size_t vector_length = 64;
  std::uint64_t seed = 1;
  std::size_t key_bits = 512;
  unsigned frac_bits = kDefaultFracBits;
};

FlScenario parse_scenario(std::string_view text);
std::vector<std::vector<double>> scenario_weights(const FlScenario& s);
std::string fl_report_json(const FlScenario& s, const FlRoundResult& r);

}  // namespace flep::he
