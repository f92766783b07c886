#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flep/key_bundle.hpp"
#include "flep/metrics.hpp"
#include "flep/pipeline.hpp"

namespace flep {

// Environment variable consulted when no corpus directory is given.
inline constexpr const char* kCorpusDirEnv = "FLEP_CORPUS_DIR";

// Sub-block side for an image: 2 at 256 px and doubling with each doubling
// of the smaller side; never below 2.
std::size_t block_side_for(std::size_t width, std::size_t height);

struct CorpusOptions {
  KeyBundle base_key;
  std::optional<GrayImage> secret;  // tiled to each file's size; synthesised if absent
  PipelineConfig pipeline;
  std::size_t timing_runs = 5;
};

struct CorpusRow {
  std::string name;
  std::size_t block_side = 0;
  std::optional<MetricsReport> report;  // empty when the file failed
  std::string error;
};

struct CorpusSummary {
  MetricsReport mean;
  MetricsReport stddev;  // population standard deviation
  std::size_t files = 0;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;  // sorted by file name
  CorpusSummary summary;
  std::size_t failures() const;
};

// Tiles `secret` (wrapping) to the requested size.
GrayImage tile_to(const GrayImage& secret, std::size_t width, std::size_t height);

// Evaluates every *.pgm in `dir`. Per-file failures are recorded and the run
// continues; an empty directory is an error.
CorpusReport run_corpus(const std::filesystem::path& dir, const CorpusOptions& options);

CorpusSummary summarize(const std::vector<MetricsReport>& reports);

std::string corpus_to_table(const CorpusReport& report);
std::string corpus_to_json(const CorpusReport& report);

}  // namespace flep
