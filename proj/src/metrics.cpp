#include "flep/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "flep/errors.hpp"

namespace flep {

namespace {

void same_shape(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("images differ in size");
  }
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename F>
double median_seconds(std::size_t runs, F&& f) {
  std::vector<double> times;
  times.reserve(runs);
  for (std::size_t i = 0; i < std::max<std::size_t>(runs, 1); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  return n % 2 == 1 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

}  // namespace

Histogram histogram(const GrayImage& img) {
  Histogram h{};
  for (auto v : img.pixels()) ++h[v];
  return h;
}

GrayImage render_8bit(const RealPlane& plane) {
  const auto values = plane.values();
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<std::uint8_t> px(values.size(), 0);
  if (hi > lo) {
    const double scale = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < px.size(); ++i) {
      const double v = std::nearbyint((values[i] - lo) * scale);
      px[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return GrayImage(plane.width(), plane.height(), std::move(px));
}

double npcr(const GrayImage& a, const GrayImage& b) {
  same_shape(a, b);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a.pixels()[i] != b.pixels()[i];
  return 100.0 * static_cast<double>(diff) / static_cast<double>(a.size());
}

double uaci(const GrayImage& a, const GrayImage& b) {
  same_shape(a, b);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<std::uint64_t>(std::abs(int{a.pixels()[i]} - int{b.pixels()[i]}));
  }
  return 100.0 * static_cast<double>(sum) / (255.0 * static_cast<double>(a.size()));
}

double entropy(const GrayImage& img) {
  const auto h = histogram(img);
  const double n = static_cast<double>(img.size());
  double bits = 0.0;
  for (auto count : h) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    bits -= p * std::log2(p);
  }
  return bits;
}

double encryption_quality(const GrayImage& plain, const GrayImage& cipher) {
  if (plain.size() != cipher.size()) throw DimensionError("images differ in pixel count");
  const auto hp = histogram(plain), hc = histogram(cipher);
  std::uint64_t sum = 0;
  for (std::size_t v = 0; v < 256; ++v) sum += hp[v] > hc[v] ? hp[v] - hc[v] : hc[v] - hp[v];
  return static_cast<double>(sum) / 256.0;
}

double chi_square_uniformity(const GrayImage& img) {
  if (img.size() < 256) throw DimensionError("chi-square uniformity needs at least 256 pixels");
  const auto h = histogram(img);
  const double expected = static_cast<double>(img.size()) / 256.0;
  double chi = 0.0;
  for (auto count : h) {
    const double d = static_cast<double>(count) - expected;
    chi += d * d / expected;
  }
  return chi;
}

GrayImage perturb_one_pixel(const GrayImage& plain, std::uint64_t seed) {
  std::uint64_t state = seed;
  const std::size_t index = splitmix_next(state) % plain.size();
  const auto offset = static_cast<unsigned>(1 + splitmix_next(state) % 255);
  const std::size_t x = index % plain.width(), y = index / plain.width();
  return plain.with_pixel(x, y, static_cast<std::uint8_t>((plain.at(x, y) + offset) % 256));
}

MetricsReport evaluate(const GrayImage& plain, const KeyBundle& key, const GrayImage& secret,
                       const EvaluateOptions& options) {
  const auto& cfg = options.pipeline;
  const GrayImage* secret_ptr = cfg.layers.blend ? &secret : nullptr;

  const auto payload = encrypt_pipeline(plain, secret_ptr, key, cfg);
  const auto cipher = render_8bit(payload.plane);
  const auto neighbour = perturb_one_pixel(plain, options.perturbation_seed);
  const auto cipher2 = render_8bit(encrypt_pipeline(neighbour, secret_ptr, key, cfg).plane);

  MetricsReport r;
  r.width = plain.width();
  r.height = plain.height();
  r.npcr = npcr(cipher, cipher2);
  r.uaci = uaci(cipher, cipher2);
  r.entropy = entropy(cipher);
  r.encryption_quality = encryption_quality(plain, cipher);
  r.chi_square = chi_square_uniformity(cipher);
  r.lossless = decrypt_pipeline(payload, secret_ptr, key, cfg) == plain;

  r.encrypt_time = median_seconds(options.timing_runs,
                                  [&] { (void)encrypt_pipeline(plain, secret_ptr, key, cfg); });
  r.decrypt_time = median_seconds(options.timing_runs,
                                  [&] { (void)decrypt_pipeline(payload, secret_ptr, key, cfg); });
  return r;
}

std::string report_to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["width"] = r.width;
  j["height"] = r.height;
  j["npcr"] = r.npcr;
  j["uaci"] = r.uaci;
  j["entropy"] = r.entropy;
  j["encryption_quality"] = r.encryption_quality;
  j["chi_square"] = r.chi_square;
  j["encrypt_time"] = r.encrypt_time;
  j["decrypt_time"] = r.decrypt_time;
  j["total_time"] = r.total_time();
  j["lossless"] = r.lossless;
  return j.dump(2);
}

std::string report_to_table(const MetricsReport& r, const std::string& label) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "Measure" << label << "\n";
  out << std::string(24 + std::max<std::size_t>(label.size(), 12), '-') << "\n";
  auto row = [&](const char* name, double v, int prec, const char* unit = "") {
    out << std::left << std::setw(24) << name << std::fixed << std::setprecision(prec) << v << unit
        << "\n";
  };
  row("UACI", r.uaci, 4);
  row("NPCR", r.npcr, 4);
  row("Encryption Quality", r.encryption_quality, 3);
  row("Information Entropy", r.entropy, 4);
  row("Chi-square", r.chi_square, 2);
  row("Encryption Time", r.encrypt_time, 4, " sec");
  row("Decryption Time", r.decrypt_time, 4, " sec");
  row("Total Time", r.total_time(), 4, " sec");
  out << std::left << std::setw(24) << "Lossless" << (r.lossless ? "yes" : "NO") << "\n";
  return out.str();
}

}  // namespace flep
