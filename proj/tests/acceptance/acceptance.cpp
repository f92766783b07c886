// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Uses $FLEP_CORPUS_DIR when set, otherwise a generated 12-image 256x256 corpus.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <unistd.h>
#include <random>
#include <string>
#include <vector>

#include "flep/corpus.hpp"
#include "flep/federated.hpp"
#include "flep/metrics.hpp"
#include "flep/paillier.hpp"
#include "flep/pipeline.hpp"
#include "flep/synthetic.hpp"
#include "flep/wavelet.hpp"
#include "oracles.hpp"

using namespace flep;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& what) {
  std::printf("       info: %s\n", what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<GrayImage> load_all(const std::vector<std::filesystem::path>& files) {
  std::vector<GrayImage> out;
  for (const auto& f : files) out.push_back(load_pgm(f));
  return out;
}

std::vector<std::filesystem::path> pgm_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

GrayImage random_image(std::size_t side, std::mt19937_64& rng) {
  std::vector<std::uint8_t> px(side * side);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng() & 0xff);
  return GrayImage(side, side, std::move(px));
}

std::vector<const MetricsReport*> reports_of(const CorpusReport& r) {
  std::vector<const MetricsReport*> out;
  for (const auto& row : r.rows) {
    if (row.report) out.push_back(&*row.report);
  }
  return out;
}

}  // namespace

int main() {
  std::filesystem::path dir;
  std::filesystem::path scratch;
  if (const char* env = std::getenv(kCorpusDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    scratch = std::filesystem::temp_directory_path() / ("flep_acceptance_" + std::to_string(::getpid()));
    std::filesystem::remove_all(scratch);
    write_synthetic_corpus(scratch, 12, 256, 2024);
    dir = scratch;
  }
  const auto files = pgm_files(dir);
  const auto images = load_all(files);
  std::printf("corpus: %s (%zu files)\n", dir.string().c_str(), files.size());

  const auto secret = synthetic_secret(256, 256, 99);
  const auto base_key = KeyBundle::generate(0x5eed);

  // 1. Lossless round trip on every file, default config.
  {
    const auto t0 = Clock::now();
    std::size_t exact = 0, tried = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto& img = images[i];
      if (img.width() != 256 || img.height() != 256) continue;
      ++tried;
      const auto key = base_key.with_secret(secret);
      const auto payload = encrypt_pipeline(img, &secret, key);
      if (decrypt_pipeline(payload, &secret, key) == img) ++exact;
    }
    const double t = seconds_since(t0);
    verdict(1, tried >= 10 && exact == tried && t < 30.0,
            fmt("lossless round trip, %zu/%zu images exact in %.2f s (need >= 10 images, all exact, < 30 s)",
                exact, tried, t));
  }

  CorpusOptions full{base_key, secret, {}, 5};
  const auto corpus = run_corpus(dir, full);
  const auto reps = reports_of(corpus);
  const auto& mean = corpus.summary.mean;
  const auto& sd = corpus.summary.stddev;
  for (const auto& row : corpus.rows) {
    if (!row.report) info(row.name + " failed: " + row.error);
  }

  CorpusOptions layer_one = full;
  layer_one.pipeline.layers = LayerSet::parse("scramble,diffuse");
  layer_one.timing_runs = 1;
  const auto l1 = run_corpus(dir, layer_one);

  // 2. NPCR.
  verdict(2, mean.npcr >= 99.50 && mean.npcr <= 99.70 && sd.npcr <= 0.05,
          fmt("NPCR corpus mean %.4f (need [99.50, 99.70]), std %.4f (need <= 0.05)", mean.npcr, sd.npcr));
  info(fmt("scramble+diffuse only: NPCR mean %.4f std %.4f", l1.summary.mean.npcr, l1.summary.stddev.npcr));

  // 3. UACI.
  verdict(3, mean.uaci >= 33.28 && mean.uaci <= 33.65 && sd.uaci <= 0.10,
          fmt("UACI corpus mean %.4f (need [33.28, 33.65]), std %.4f (need <= 0.10)", mean.uaci, sd.uaci));
  info(fmt("scramble+diffuse only: UACI mean %.4f std %.4f", l1.summary.mean.uaci, l1.summary.stddev.uaci));

  // 4. Entropy of every rendering.
  {
    double lo = 8.0, lo_l1 = 8.0;
    for (const auto* r : reps) lo = std::min(lo, r->entropy);
    for (const auto* r : reports_of(l1)) lo_l1 = std::min(lo_l1, r->entropy);
    verdict(4, !reps.empty() && lo >= 7.99, fmt("entropy minimum %.4f over %zu renderings (need >= 7.99)", lo, reps.size()));
    info(fmt("scramble+diffuse only: entropy minimum %.4f", lo_l1));
  }

  // 5. Chi-square uniformity.
  {
    double hi = 0.0, hi_l1 = 0.0;
    std::size_t pass_l1 = 0;
    for (const auto* r : reps) hi = std::max(hi, r->chi_square);
    for (const auto* r : reports_of(l1)) {
      hi_l1 = std::max(hi_l1, r->chi_square);
      pass_l1 += r->chi_square < kChiSquare255Critical;
    }
    verdict(5, !reps.empty() && hi < kChiSquare255Critical,
            fmt("chi-square maximum %.2f (need every rendering < %.2f)", hi, kChiSquare255Critical));
    info(fmt("scramble+diffuse only: chi-square maximum %.2f, %zu/%zu below the critical value", hi_l1, pass_l1,
             reports_of(l1).size()));
  }

  // 6. Encryption quality floor.
  {
    double lo = 1e300;
    for (const auto& row : corpus.rows) {
      if (!row.report) continue;
      lo = std::min(lo, row.report->encryption_quality);
      info(fmt("EQ %-16s %9.3f", row.name.c_str(), row.report->encryption_quality));
    }
    verdict(6, !reps.empty() && lo >= 35.0, fmt("encryption quality minimum %.3f (need >= 35)", lo));
  }

  // 7. Timing, and the directional effect of the noise layer.
  {
    double worst = 0.0;
    for (const auto* r : reps) worst = std::max(worst, r->total_time());
    PipelineConfig no_noise;
    no_noise.layers = LayerSet::parse("scramble,diffuse,blend");
    double with_noise = 0.0, without_noise = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].width() % 2 != 0 || images[i].height() % 2 != 0) continue;
      const auto s = tile_to(secret, images[i].width(), images[i].height());
      const auto key = base_key.with_block_side(block_side_for(images[i].width(), images[i].height()))
                           .with_secret(s);
      EvaluateOptions a{{}, i, 5}, b{no_noise, i, 5};
      with_noise += evaluate(images[i], key, s, a).encrypt_time;
      without_noise += evaluate(images[i], key, s, b).encrypt_time;
    }
    verdict(7, !reps.empty() && worst <= 3.0 && without_noise < with_noise,
            fmt("encrypt+decrypt worst %.4f s (need <= 3 s); summed encrypt medians with noise %.4f s, without %.4f s "
                "(need a reduction)",
                worst, with_noise, without_noise));
  }

  // 8. Avalanche and key sensitivity.
  {
    double lo_npcr = 100.0;
    for (const auto* r : reps) lo_npcr = std::min(lo_npcr, r->npcr);
    double lo_key = 100.0;
    for (const auto& img : images) {
      const auto s = tile_to(secret, img.width(), img.height());
      const auto key = base_key.with_block_side(block_side_for(img.width(), img.height())).with_secret(s);
      const auto payload = encrypt_pipeline(img, &s, key);
      const auto wrong = key.with_chaos_seed(key.chaos_seed() + 1e-10);
      lo_key = std::min(lo_key, npcr(decrypt_pipeline(payload, &s, wrong), img));
    }
    verdict(8, lo_npcr >= 99.0 && lo_key >= 99.0,
            fmt("one-pixel change NPCR minimum %.4f, seed+1e-10 decryption NPCR minimum %.4f (need both >= 99)",
                lo_npcr, lo_key));
  }

  // 9. Metric self-validation on independent uniform images.
  {
    std::mt19937_64 rng(9);
    double sn = 0.0, su = 0.0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
      const auto a = random_image(256, rng), b = random_image(256, rng);
      sn += npcr(a, b);
      su += uaci(a, b);
    }
    sn /= pairs;
    su /= pairs;
    verdict(9, std::abs(sn - 99.609) <= 0.1 && std::abs(su - 33.46) <= 0.3,
            fmt("uniform pairs (200): mean NPCR %.4f (need 99.609 +- 0.1), mean UACI %.4f (need 33.46 +- 0.3)", sn,
                su));
  }

  // 10. Homomorphic encryption.
  {
    const auto t0 = Clock::now();
    bool toy_ok = oracle::paillier_exhaustive_check(11, 13);
    const auto toy = he::HEKeyPair::from_primes(11, 13);
    const oracle::ToyPaillier ref(11, 13);
    for (unsigned long m = 0; m < 143 && toy_ok; ++m) {
      const unsigned long r = 2 + m % 140;
      if (std::gcd(r, 143ul) != 1) continue;
      const auto c = he::encrypt_with_nonce(m, toy.pub, r);
      toy_ok = c.value.get_ui() == ref.encrypt(m, r) && he::decrypt(c, toy) == m;
    }
    const auto keys = he::keygen(512, 10);
    he::SeededNonceSource nonces(11);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(12);
    std::size_t sampled_ok = 0;
    for (int i = 0; i < 1000; ++i) {
      const mpz_class m = rng.get_z_range(keys.pub.n);
      sampled_ok += he::decrypt(he::encrypt(m, keys.pub, nonces), keys) == m;
    }
    he::FlScenario sc;
    sc.client_count = 5;
    sc.vector_length = 64;
    const auto round = he::fl_round(he::scenario_weights(sc), keys, 16, nonces);
    const double t = seconds_since(t0);
    const double bound = std::ldexp(1.0, -15);
    verdict(10, toy_ok && sampled_ok == 1000 && round.max_abs_error < bound && t < 60.0,
            fmt("toy key exhaustive %s, 512-bit sampled %zu/1000, FedAvg 5x64 max error %.3g (need < %.3g), %.2f s "
                "(need < 60 s)",
                toy_ok ? "ok" : "FAILED", sampled_ok, round.max_abs_error, bound, t));
  }

  // 11. Codec numerics against the matrix oracle.
  {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-512.0, 512.0);
    double rt = 0.0, cross = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const std::size_t w = 2 * (1 + rng() % 16), h = 2 * (1 + rng() % 16);
      std::vector<double> v(w * h);
      for (auto& x : v) x = val(rng);
      const RealPlane plane(w, h, v);
      const auto p = dwt2(plane);
      const auto back = idwt2(p);
      for (std::size_t k = 0; k < v.size(); ++k) rt = std::max(rt, std::abs(back.values()[k] - v[k]));
      const auto ref = oracle::dwt2_reference(w, h, v);
      for (std::size_t k = 0; k < ref.ll.size(); ++k) {
        cross = std::max({cross, std::abs(p.ll.values()[k] - ref.ll[k]), std::abs(p.lh.values()[k] - ref.lh[k]),
                          std::abs(p.hl.values()[k] - ref.hl[k]), std::abs(p.hh.values()[k] - ref.hh[k])});
      }
    }
    double blend_rt = 0.0, blend_cross = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto a = random_image(256, rng), s = random_image(256, rng);
      const double alpha = 0.9;
      const auto enc = blend_encode(a, s, alpha);
      const auto dec = blend_decode(enc, s, alpha);
      for (std::size_t k = 0; k < a.size(); ++k) blend_rt = std::max(blend_rt, std::abs(dec.values()[k] - a.pixels()[k]));
      const auto ra = oracle::dwt2_reference(256, 256, std::vector<double>(a.pixels().begin(), a.pixels().end()));
      const auto rs = oracle::dwt2_reference(256, 256, std::vector<double>(s.pixels().begin(), s.pixels().end()));
      const auto pe = dwt2(enc);
      for (std::size_t k = 0; k < ra.ll.size(); ++k) {
        const auto mix = [&](double x, double y) { return alpha * x + (1 - alpha) * y; };
        blend_cross = std::max({blend_cross, std::abs(pe.ll.values()[k] - mix(ra.ll[k], rs.ll[k])),
                                std::abs(pe.lh.values()[k] - mix(ra.lh[k], rs.lh[k])),
                                std::abs(pe.hl.values()[k] - mix(ra.hl[k], rs.hl[k])),
                                std::abs(pe.hh.values()[k] - mix(ra.hh[k], rs.hh[k]))});
      }
    }
    verdict(11, rt < 1e-9 && cross < 1e-9 && blend_rt < 1e-6 && blend_cross < 1e-6,
            fmt("dwt round trip %.3g and oracle gap %.3g over 1000 planes (need < 1e-9); blend round trip %.3g and "
                "oracle gap %.3g (need < 1e-6)",
                rt, cross, blend_rt, blend_cross));
  }

  if (!scratch.empty()) std::filesystem::remove_all(scratch);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
