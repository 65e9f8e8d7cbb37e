#ifndef TTSEVAL_RUN_CONFIG_H_
#define TTSEVAL_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ttseval/alignment.h"
#include "ttseval/metrics.h"

namespace ttseval {

enum class EmbedderKind { kFallback, kHttp };

// Everything an evaluation run depends on. Loaded from an INI file:
//
//   [run]      dataset, output_dir, seed, threads, sample_size
//   [inputs]   reference_dir, reference_annotator, predicted_dir, manifest
//   [metrics]  s_max_hours, cosine_cutoff, aggregation, aultc_weighting
//   [distance] kind, embedder, embed_dim, embed_url
//
// Relative paths are resolved against the config file's directory.
struct RunConfig {
  std::string dataset = "dataset";
  std::filesystem::path reference_dir;
  std::string reference_annotator = "manual";
  std::filesystem::path predicted_dir;
  std::optional<std::filesystem::path> manifest;
  std::filesystem::path output_dir;

  MetricConfig metrics;
  DistanceKind distance = DistanceKind::kEmbeddingCosine;
  EmbedderKind embedder = EmbedderKind::kFallback;
  std::size_t embed_dim = 256;
  std::string embed_url;

  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Throws ConfigError on unknown keys, bad values or missing inputs.
RunConfig load_run_config(const std::filesystem::path& path);

// Checks that every referenced input exists and values are in range.
void validate_run_config(const RunConfig& config);

// Canonical key=value rendering of every setting that affects results
// (the output directory is excluded), and its SHA-256.
std::string canonical_config_text(const RunConfig& config);
std::string config_hash(const RunConfig& config);

std::string aggregation_token(Aggregation aggregation);
std::string distance_token(DistanceKind kind);

}  // namespace ttseval

#endif  // TTSEVAL_RUN_CONFIG_H_
