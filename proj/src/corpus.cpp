#include "flep/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "flep/digest.hpp"
#include "flep/errors.hpp"
#include "flep/synthetic.hpp"

namespace flep {

std::size_t block_side_for(std::size_t width, std::size_t height) {
  const std::size_t side = std::min(width, height);
  std::size_t s = 2;
  while (s * 2 * 128 <= side) s *= 2;
  return s;
}

std::size_t CorpusReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CorpusRow& r) { return !r.report; }));
}

GrayImage tile_to(const GrayImage& secret, std::size_t width, std::size_t height) {
  if (secret.width() == width && secret.height() == height) return secret;
  std::vector<std::uint8_t> px(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      px[y * width + x] = secret.at(x % secret.width(), y % secret.height());
    }
  }
  return GrayImage(width, height, std::move(px));
}

CorpusSummary summarize(const std::vector<MetricsReport>& reports) {
  CorpusSummary s;
  s.files = reports.size();
  if (reports.empty()) return s;
  const double n = static_cast<double>(reports.size());
  auto stat = [&](auto member, double& mean_out, double& std_out) {
    double sum = 0.0;
    for (const auto& r : reports) sum += r.*member;
    mean_out = sum / n;
    double sq = 0.0;
    for (const auto& r : reports) sq += (r.*member - mean_out) * (r.*member - mean_out);
    std_out = std::sqrt(sq / n);
  };
  stat(&MetricsReport::npcr, s.mean.npcr, s.stddev.npcr);
  stat(&MetricsReport::uaci, s.mean.uaci, s.stddev.uaci);
  stat(&MetricsReport::entropy, s.mean.entropy, s.stddev.entropy);
  stat(&MetricsReport::encryption_quality, s.mean.encryption_quality, s.stddev.encryption_quality);
  stat(&MetricsReport::chi_square, s.mean.chi_square, s.stddev.chi_square);
  stat(&MetricsReport::encrypt_time, s.mean.encrypt_time, s.stddev.encrypt_time);
  stat(&MetricsReport::decrypt_time, s.mean.decrypt_time, s.stddev.decrypt_time);
  s.mean.lossless = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.lossless; });
  return s;
}

CorpusReport run_corpus(const std::filesystem::path& dir, const CorpusOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw IoError("corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  if (files.empty()) throw IoError("corpus directory has no .pgm files: " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  CorpusReport out;
  std::vector<MetricsReport> ok;
  for (const auto& path : files) {
    CorpusRow row;
    row.name = path.filename().string();
    try {
      const auto plain = load_pgm(path);
      row.block_side = block_side_for(plain.width(), plain.height());
      const auto name_seed = fnv1a64(row.name);
      const GrayImage secret = options.secret
                                   ? tile_to(*options.secret, plain.width(), plain.height())
                                   : synthetic_secret(plain.width(), plain.height(), name_seed);
      const auto key = options.base_key.with_block_side(row.block_side).with_secret(secret);
      EvaluateOptions eval{options.pipeline, name_seed, options.timing_runs};
      row.report = evaluate(plain, key, secret, eval);
      ok.push_back(*row.report);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  out.summary = summarize(ok);
  return out;
}

std::string corpus_to_table(const CorpusReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(22) << "File Name" << std::right << std::setw(6) << "s"
      << std::setw(10) << "UACI" << std::setw(10) << "NPCR" << std::setw(9) << "Entropy"
      << std::setw(10) << "EQ" << std::setw(11) << "Chi2" << std::setw(10) << "Enc(s)"
      << std::setw(10) << "Dec(s)" << "  Lossless\n";
  out << std::string(108, '-') << "\n";
  auto metrics_row = [&](const std::string& name, const std::string& side, const MetricsReport& r,
                         const std::string& tail) {
    out << std::left << std::setw(22) << name << std::right << std::setw(6) << side << std::fixed
        << std::setprecision(4) << std::setw(10) << r.uaci << std::setw(10) << r.npcr
        << std::setw(9) << r.entropy << std::setprecision(3) << std::setw(10)
        << r.encryption_quality << std::setprecision(2) << std::setw(11) << r.chi_square
        << std::setprecision(4) << std::setw(10) << r.encrypt_time << std::setw(10)
        << r.decrypt_time << "  " << tail << "\n";
  };
  for (const auto& row : report.rows) {
    if (row.report) {
      metrics_row(row.name, std::to_string(row.block_side), *row.report,
                  row.report->lossless ? "yes" : "NO");
    } else {
      out << std::left << std::setw(22) << row.name << "  FAILED: " << row.error << "\n";
    }
  }
  out << std::string(108, '-') << "\n";
  metrics_row("Mean", "", report.summary.mean, report.summary.mean.lossless ? "yes" : "NO");
  metrics_row("STD", "", report.summary.stddev, "");
  return out.str();
}

std::string corpus_to_json(const CorpusReport& report) {
  auto metrics = [](const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["npcr"] = r.npcr;
    j["uaci"] = r.uaci;
    j["entropy"] = r.entropy;
    j["encryption_quality"] = r.encryption_quality;
    j["chi_square"] = r.chi_square;
    j["encrypt_time"] = r.encrypt_time;
    j["decrypt_time"] = r.decrypt_time;
    return j;
  };
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["file"] = row.name;
    if (row.report) {
      r["block_side"] = row.block_side;
      r["width"] = row.report->width;
      r["height"] = row.report->height;
      r["metrics"] = metrics(*row.report);
      r["lossless"] = row.report->lossless;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["files"] = report.summary.files;
  j["failures"] = report.failures();
  j["mean"] = metrics(report.summary.mean);
  j["std"] = metrics(report.summary.stddev);
  return j.dump(2);
}

}  // namespace flep
