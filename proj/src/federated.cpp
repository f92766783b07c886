#include "flep/federated.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "flep/errors.hpp"

namespace flep::he {

Client::Client(PublicKey pub, unsigned frac_bits, std::size_t max_clients)
    : pub_(std::move(pub)), frac_bits_(frac_bits), max_clients_(std::max<std::size_t>(max_clients, 1)) {}

std::vector<Ciphertext> Client::submit(std::span<const double> weights, NonceSource& nonces) const {
  // |x| < n / (2 * scale * clients) keeps the aggregate sum from wrapping.
  mpz_class bound = pub_.n / (2 * static_cast<unsigned long>(max_clients_));
  std::vector<Ciphertext> out;
  out.reserve(weights.size());
  for (double w : weights) {
    const mpz_class v = encode_fixed(w, frac_bits_, pub_.n);
    mpz_class signed_v = v;
    if (2 * signed_v >= pub_.n) signed_v = pub_.n - signed_v;
    if (signed_v >= bound) throw Error("fl client: weight exceeds the encoding bound for this round");
    out.push_back(encrypt(v, pub_, nonces));
  }
  return out;
}

std::vector<Ciphertext> Aggregator::aggregate(const std::vector<std::vector<Ciphertext>>& updates) const {
  if (updates.empty()) throw Error("aggregator: no client updates");
  const std::size_t len = updates.front().size();
  for (const auto& u : updates) {
    if (u.size() != len) throw DimensionError("aggregator: client vectors differ in length");
  }
  std::vector<Ciphertext> sum = updates.front();
  for (std::size_t c = 1; c < updates.size(); ++c) {
    for (std::size_t i = 0; i < len; ++i) sum[i] = he_add(sum[i], updates[c][i], pub_);
  }
  return sum;
}

std::vector<double> Decryptor::average(std::span<const Ciphertext> sums, std::size_t client_count) const {
  if (client_count == 0) throw Error("decryptor: client count must be >= 1");
  std::vector<double> out;
  out.reserve(sums.size());
  for (const auto& c : sums) {
    out.push_back(decode_fixed(decrypt(c, keys_), frac_bits_, keys_.pub.n) /
                  static_cast<double>(client_count));
  }
  return out;
}

std::vector<double> plaintext_fedavg(const std::vector<std::vector<double>>& clients) {
  if (clients.empty()) throw Error("fedavg: no clients");
  std::vector<double> mean(clients.front().size(), 0.0);
  for (const auto& c : clients) {
    if (c.size() != mean.size()) throw DimensionError("fedavg: client vectors differ in length");
    for (std::size_t i = 0; i < c.size(); ++i) mean[i] += c[i];
  }
  for (auto& m : mean) m /= static_cast<double>(clients.size());
  return mean;
}

FlRoundResult fl_round(const std::vector<std::vector<double>>& clients, const HEKeyPair& keys,
                       unsigned frac_bits, NonceSource& nonces) {
  FlRoundResult result;
  result.plaintext_mean = plaintext_fedavg(clients);

  std::vector<std::vector<Ciphertext>> updates;
  updates.reserve(clients.size());
  for (const auto& weights : clients) {
    updates.push_back(Client(keys.pub, frac_bits, clients.size()).submit(weights, nonces));
  }
  result.encrypted_sum = Aggregator(keys.pub).aggregate(updates);
  result.average = Decryptor(keys, frac_bits).average(result.encrypted_sum, clients.size());
  for (std::size_t i = 0; i < result.average.size(); ++i) {
    result.max_abs_error =
        std::max(result.max_abs_error, std::abs(result.average[i] - result.plaintext_mean[i]));
  }
  return result;
}

FlScenario parse_scenario(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  FlScenario s;
  try {
    s.client_count = j.value("clients", s.client_count);
    s.vector_length = j.value("vector_length", s.vector_length);
    s.seed = j.value("seed", s.seed);
    s.key_bits = j.value("key_bits", s.key_bits);
    s.frac_bits = j.value("frac_bits", s.frac_bits);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (s.client_count == 0) throw ParseError("scenario: clients must be >= 1");
  if (s.vector_length == 0) throw ParseError("scenario: vector_length must be >= 1");
  return s;
}

std::vector<std::vector<double>> scenario_weights(const FlScenario& s) {
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> clients(s.client_count, std::vector<double>(s.vector_length));
  for (auto& c : clients) {
    for (auto& w : c) w = u(rng);
  }
  return clients;
}

std::string fl_report_json(const FlScenario& s, const FlRoundResult& r) {
  nlohmann::ordered_json j;
  j["clients"] = s.client_count;
  j["vector_length"] = s.vector_length;
  j["key_bits"] = s.key_bits;
  j["frac_bits"] = s.frac_bits;
  j["seed"] = s.seed;
  j["aggregate"] = r.average;
  j["plaintext_mean"] = r.plaintext_mean;
  j["max_abs_error"] = r.max_abs_error;
  j["error_bound"] = std::ldexp(1.0, -static_cast<int>(s.frac_bits));
  j["within_bound"] = r.max_abs_error < std::ldexp(1.0, -static_cast<int>(s.frac_bits));
  return j.dump(2);
}

}  // namespace flep::he
