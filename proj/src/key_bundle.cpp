#include "flep/key_bundle.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "flep/errors.hpp"

namespace flep {

namespace {

bool is_power_of_two(std::size_t v) { return v >= 2 && (v & (v - 1)) == 0; }

void validate(const KeyParams& p) {
  if (p.key_id.empty() || p.key_id.size() > 0xffff) {
    throw KeyError("key_id must be 1..65535 bytes");
  }
  if (!std::isfinite(p.chaos_param) || p.chaos_param < 3.9 || p.chaos_param >= 4.0) {
    throw KeyError("chaos_param must lie in [3.9, 4.0)");
  }
  const double x0 = p.chaos_seed;
  if (!std::isfinite(x0) || x0 <= 0.0 || x0 >= 1.0) {
    throw KeyError("chaos_seed must lie in the open interval (0, 1)");
  }
  // 1 - 1/r is the nonzero fixed point and 1/r maps straight onto it.
  if (x0 == 1.0 - 1.0 / p.chaos_param || x0 == 1.0 / p.chaos_param) {
    throw KeyError("chaos_seed lies on a fixed point of the logistic map");
  }
  if (!is_power_of_two(p.block_side)) throw KeyError("block_side must be a power of two >= 2");
  if (!std::isfinite(p.blend_alpha) || p.blend_alpha <= 0.0 || p.blend_alpha > 1.0) {
    throw KeyError("blend_alpha must lie in (0, 1]");
  }
  if (!std::isfinite(p.noise_mean)) throw KeyError("noise_mean must be finite");
  if (!std::isfinite(p.noise_std) || p.noise_std < 0.0) throw KeyError("noise_std must be >= 0");
  for (double g : p.group_keys) {
    if (!(g > 0.0 && g < 1.0)) throw KeyError("group keys must lie in (0, 1)");
  }
}

}  // namespace

KeyBundle::KeyBundle(KeyParams params) : p_(std::move(params)) { validate(p_); }

KeyBundle KeyBundle::generate(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> seed_dist(0.05, 0.95);
  std::uniform_real_distribution<double> param_dist(3.99, 3.9999);
  KeyParams p;
  std::array<std::uint8_t, 8> id{};
  for (auto& b : id) b = static_cast<std::uint8_t>(rng());
  p.key_id = to_hex(id);
  p.chaos_seed = seed_dist(rng);
  p.chaos_param = param_dist(rng);
  p.noise_seed = rng();
  p.diffusion_iv = static_cast<std::uint8_t>(rng());
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_chaos_seed(double x0) const {
  auto p = p_;
  p.chaos_seed = x0;
  p.group_keys.clear();
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_block_side(std::size_t side) const {
  auto p = p_;
  p.block_side = side;
  p.group_keys.clear();
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_secret(const GrayImage& secret) const {
  auto p = p_;
  p.secret_digest = image_digest(secret);
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_noise(double mean, double stddev, std::uint64_t seed) const {
  auto p = p_;
  p.noise_mean = mean;
  p.noise_std = stddev;
  p.noise_seed = seed;
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_diffusion_iv(std::uint8_t iv) const {
  auto p = p_;
  p.diffusion_iv = iv;
  return KeyBundle(std::move(p));
}

KeyBundle KeyBundle::with_group_keys(std::vector<double> keys) const {
  auto p = p_;
  p.group_keys = std::move(keys);
  return KeyBundle(std::move(p));
}

std::string serialize_keybundle(const KeyBundle& key) {
  const auto& p = key.params();
  nlohmann::ordered_json j;
  j["format"] = "flep-key";
  j["key_id"] = p.key_id;
  j["chaos_seed"] = p.chaos_seed;
  j["chaos_param"] = p.chaos_param;
  j["block_side"] = p.block_side;
  j["group_keys"] = p.group_keys;
  j["secret_image_digest"] = to_hex(p.secret_digest);
  j["blend_alpha"] = p.blend_alpha;
  j["noise_mean"] = p.noise_mean;
  j["noise_std"] = p.noise_std;
  j["noise_seed"] = p.noise_seed;
  j["diffusion_iv"] = p.diffusion_iv;
  // nlohmann prints the shortest digit string that parses back to the same double.
  return j.dump(2) + "\n";
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("key bundle: missing field \"") + name + "\"");
  return *it;
}

template <typename T>
T typed(const nlohmann::json& j, const char* name) {
  const auto& v = field(j, name);
  try {
    if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ParseError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError("");
      }
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ParseError(std::string("key bundle: field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

KeyBundle parse_keybundle(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("key bundle: malformed document: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("key bundle: top level must be an object");
  KeyParams p;
  p.key_id = typed<std::string>(j, "key_id");
  p.chaos_seed = typed<double>(j, "chaos_seed");
  p.chaos_param = typed<double>(j, "chaos_param");
  p.block_side = typed<std::size_t>(j, "block_side");
  p.group_keys = typed<std::vector<double>>(j, "group_keys");
  p.secret_digest = digest_from_hex(typed<std::string>(j, "secret_image_digest"));
  p.blend_alpha = typed<double>(j, "blend_alpha");
  p.noise_mean = typed<double>(j, "noise_mean");
  p.noise_std = typed<double>(j, "noise_std");
  p.noise_seed = typed<std::uint64_t>(j, "noise_seed");
  const auto iv = typed<std::uint64_t>(j, "diffusion_iv");
  if (iv > 255) throw ParseError("key bundle: field \"diffusion_iv\" must fit in one byte");
  p.diffusion_iv = static_cast<std::uint8_t>(iv);
  return KeyBundle(std::move(p));
}

KeyBundle load_keybundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_keybundle(ss.str());
}

void save_keybundle(const KeyBundle& key, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_keybundle(key);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace flep
