// Command-line front end: image encryption pipeline, evaluation, corpus
// reports and the secure-aggregation simulation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flep/corpus.hpp"
#include "flep/federated.hpp"
#include "flep/metrics.hpp"
#include "flep/pipeline.hpp"
#include "flep/scrambler.hpp"
#include "flep/synthetic.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw flep::IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw flep::IoError("cannot write " + path);
  out << text;
}

struct PipelineFlags {
  std::string layers = "all";
  std::string denoiser = "exact";
  std::size_t radius = 2;
  double sigma = 1.5;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--layers", layers, "Comma-separated subset of scramble,diffuse,blend,noise")
        ->capture_default_str();
    cmd->add_option("--denoiser", denoiser, "exact or gaussian")->capture_default_str();
    cmd->add_option("--filter-radius", radius, "Gaussian denoiser radius")->capture_default_str();
    cmd->add_option("--filter-sigma", sigma, "Gaussian denoiser sigma")->capture_default_str();
  }

  flep::PipelineConfig config() const {
    flep::PipelineConfig cfg;
    cfg.layers = flep::LayerSet::parse(layers);
    if (denoiser == "exact") cfg.denoiser = flep::DenoiserKind::ExactSubtraction;
    else if (denoiser == "gaussian") cfg.denoiser = flep::DenoiserKind::GaussianFilter;
    else throw flep::ConfigError("unknown denoiser '" + denoiser + "'");
    cfg.filter_radius = radius;
    cfg.filter_sigma = sigma;
    return cfg;
  }
};

std::optional<flep::GrayImage> maybe_secret(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return flep::load_pgm(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-layer image encryption and secure aggregation toolkit"};
  app.require_subcommand(1);

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Create an image key bundle or a Paillier key pair");
  std::string key_out = "-";
  std::optional<std::uint64_t> key_seed;
  std::string keygen_secret;
  std::size_t keygen_width = 0, keygen_height = 0, keygen_side = 2;
  double keygen_alpha = 0.9, keygen_mean = 0.0, keygen_std = 25.0;
  std::size_t he_bits = 0;
  keygen->add_option("--out,-o", key_out, "Output file ('-' for stdout)");
  keygen->add_option("--seed", key_seed, "Deterministic seed (default: OS entropy)");
  keygen->add_option("--secret", keygen_secret, "Secret image to bind by digest");
  keygen->add_option("--width", keygen_width, "Bind group keys for this image width");
  keygen->add_option("--height", keygen_height, "Bind group keys for this image height");
  keygen->add_option("--block-side", keygen_side, "Sub-block side (power of two)")->capture_default_str();
  keygen->add_option("--alpha", keygen_alpha, "Blend factor in (0, 1]")->capture_default_str();
  keygen->add_option("--noise-mean", keygen_mean, "Noise mean")->capture_default_str();
  keygen->add_option("--noise-std", keygen_std, "Noise standard deviation")->capture_default_str();
  keygen->add_option("--he-bits", he_bits, "Emit a Paillier key pair of 512, 1024 or 2048 bits instead");

  // encrypt
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a PGM image into a payload");
  std::string in_path, out_path, key_path, secret_path;
  PipelineFlags enc_flags;
  encrypt->add_option("--in,-i", in_path, "Input PGM")->required();
  encrypt->add_option("--out,-o", out_path, "Output payload")->required();
  encrypt->add_option("--key,-k", key_path, "Key bundle")->required();
  encrypt->add_option("--secret,-s", secret_path, "Secret image");
  enc_flags.add_to(encrypt);

  // decrypt
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a payload back to a PGM image");
  PipelineFlags dec_flags;
  decrypt->add_option("--in,-i", in_path, "Input payload")->required();
  decrypt->add_option("--out,-o", out_path, "Output PGM")->required();
  decrypt->add_option("--key,-k", key_path, "Key bundle")->required();
  decrypt->add_option("--secret,-s", secret_path, "Secret image");
  dec_flags.add_to(decrypt);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Cipher metrics for one image");
  PipelineFlags eval_flags;
  std::string format = "text";
  std::uint64_t perturb_seed = 0;
  std::size_t timing_runs = 5;
  eval->add_option("--in,-i", in_path, "Input PGM")->required();
  eval->add_option("--key,-k", key_path, "Key bundle")->required();
  eval->add_option("--secret,-s", secret_path, "Secret image");
  eval->add_option("--format", format, "text or json")->capture_default_str();
  eval->add_option("--perturb-seed", perturb_seed, "Seed of the one-pixel change")->capture_default_str();
  eval->add_option("--timing-runs", timing_runs, "Runs per timing median")->capture_default_str();
  eval_flags.add_to(eval);

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Evaluate every PGM in a directory");
  PipelineFlags corpus_flags;
  std::string corpus_dir, report_out = "-";
  corpus->add_option("--dir,-d", corpus_dir, std::string("Corpus directory (default: $") +
                                                 flep::kCorpusDirEnv + ")");
  corpus->add_option("--key,-k", key_path, "Base key bundle (default: generated from --seed)");
  corpus->add_option("--seed", perturb_seed, "Seed for the generated base key")->capture_default_str();
  corpus->add_option("--secret,-s", secret_path, "Secret image, tiled to each file's size");
  corpus->add_option("--format", format, "text or json")->capture_default_str();
  corpus->add_option("--out,-o", report_out, "Report file ('-' for stdout)");
  corpus->add_option("--timing-runs", timing_runs, "Runs per timing median")->capture_default_str();
  corpus_flags.add_to(corpus);

  // fl-sim
  auto* flsim = app.add_subcommand("fl-sim", "Simulated federated averaging under Paillier");
  std::string scenario_path;
  flsim->add_option("--scenario", scenario_path, "Scenario JSON {clients, vector_length, seed, key_bits, frac_bits}")
      ->required();
  flsim->add_option("--out,-o", report_out, "Report file ('-' for stdout)");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a deterministic synthetic PGM corpus");
  std::size_t synth_count = 12, synth_side = 256;
  std::uint64_t synth_seed = 1;
  synth->add_option("--dir,-d", corpus_dir, "Output directory")->required();
  synth->add_option("--count", synth_count, "Number of images")->capture_default_str();
  synth->add_option("--side", synth_side, "Image side in pixels")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Scene seed")->capture_default_str();
  synth->add_option("--secret", secret_path, "Also write a matching secret image here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (keygen->parsed()) {
      const std::uint64_t seed = key_seed ? *key_seed
                                          : (std::uint64_t{std::random_device{}()} << 32 |
                                             std::random_device{}());
      if (he_bits != 0) {
        write_text(key_out, flep::he::serialize_keypair(flep::he::keygen(he_bits, key_seed)));
        return 0;
      }
      auto key = flep::KeyBundle::generate(seed).with_block_side(keygen_side);
      auto p = key.params();
      p.blend_alpha = keygen_alpha;
      p.noise_mean = keygen_mean;
      p.noise_std = keygen_std;
      key = flep::KeyBundle(std::move(p));
      if (!keygen_secret.empty()) key = key.with_secret(flep::load_pgm(keygen_secret));
      if (keygen_width != 0 || keygen_height != 0) {
        key = flep::bind_group_keys(key, keygen_width, keygen_height);
      }
      write_text(key_out, flep::serialize_keybundle(key));
    } else if (encrypt->parsed()) {
      const auto cfg = enc_flags.config();
      const auto key = flep::load_keybundle(key_path);
      const auto secret = maybe_secret(secret_path);
      const auto payload = flep::encrypt_pipeline(flep::load_pgm(in_path), secret ? &*secret : nullptr,
                                                  key, cfg);
      flep::save_payload(payload, out_path);
    } else if (decrypt->parsed()) {
      const auto cfg = dec_flags.config();
      const auto key = flep::load_keybundle(key_path);
      const auto secret = maybe_secret(secret_path);
      std::vector<std::string> warnings;
      const auto img = flep::decrypt_pipeline(flep::load_payload(in_path),
                                              secret ? &*secret : nullptr, key, cfg, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      flep::save_pgm(img, out_path);
    } else if (eval->parsed()) {
      const auto key = flep::load_keybundle(key_path);
      const auto plain = flep::load_pgm(in_path);
      flep::EvaluateOptions opts{eval_flags.config(), perturb_seed, timing_runs};
      const auto secret = maybe_secret(secret_path);
      if (opts.pipeline.layers.blend && !secret) {
        throw flep::ConfigError("blend layer enabled but no --secret given");
      }
      const auto report = flep::evaluate(plain, key, secret ? *secret : plain, opts);
      write_text("-", format == "json" ? flep::report_to_json(report)
                                       : flep::report_to_table(report, in_path));
    } else if (corpus->parsed()) {
      if (corpus_dir.empty()) {
        if (const char* env = std::getenv(flep::kCorpusDirEnv)) corpus_dir = env;
      }
      if (corpus_dir.empty()) {
        throw flep::ConfigError(std::string("no corpus directory: pass --dir or set ") +
                                flep::kCorpusDirEnv);
      }
      flep::CorpusOptions opts{key_path.empty() ? flep::KeyBundle::generate(perturb_seed)
                                                : flep::load_keybundle(key_path),
                               maybe_secret(secret_path), corpus_flags.config(), timing_runs};
      const auto report = flep::run_corpus(corpus_dir, opts);
      write_text(report_out,
                 format == "json" ? flep::corpus_to_json(report) : flep::corpus_to_table(report));
      for (const auto& row : report.rows) {
        if (!row.report) std::cerr << "error: " << row.name << ": " << row.error << "\n";
      }
      return report.failures() == 0 ? 0 : 1;
    } else if (flsim->parsed()) {
      const auto scenario = flep::he::parse_scenario(read_text(scenario_path));
      const auto keys = flep::he::keygen(scenario.key_bits, scenario.seed);
      flep::he::SeededNonceSource nonces(scenario.seed ^ 0x6e6f6e6365ULL);
      const auto result = flep::he::fl_round(flep::he::scenario_weights(scenario), keys,
                                             scenario.frac_bits, nonces);
      write_text(report_out, flep::he::fl_report_json(scenario, result));
    } else if (synth->parsed()) {
      const auto paths = flep::write_synthetic_corpus(corpus_dir, synth_count, synth_side, synth_seed);
      for (const auto& p : paths) std::cout << p.string() << "\n";
      if (!secret_path.empty()) {
        flep::save_pgm(flep::synthetic_secret(synth_side, synth_side, synth_seed), secret_path);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
