#include "ttseval/run_config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <set>
#include <sstream>

#include "ttseval/errors.h"
#include "ttseval/sampling.h"
#include "ttseval/sha256.h"

namespace ttseval {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {"run.dataset",
                                             "run.output_dir",
                                             "run.seed",
                                             "run.threads",
                                             "run.sample_size",
                                             "inputs.reference_dir",
                                             "inputs.reference_annotator",
                                             "inputs.predicted_dir",
                                             "inputs.manifest",
                                             "metrics.s_max_hours",
                                             "metrics.cosine_cutoff",
                                             "metrics.aggregation",
                                             "metrics.aultc_weighting",
                                             "distance.kind",
                                             "distance.embedder",
                                             "distance.embed_dim",
                                             "distance.embed_url"};
  return keys;
}

template <typename T>
T get_value(const pt::ptree& tree, const std::string& key, T fallback) {
  auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  try {
    std::istringstream in(*node);
    T value;
    in >> value;
    if (in.fail() || !in.eof()) throw std::invalid_argument(key);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for " + key + ": '" + *node + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

std::string aggregation_token(Aggregation aggregation) {
  switch (aggregation) {
    case Aggregation::kPooled:
      return "pooled";
    case Aggregation::kPerReportMean:
      return "per-report-mean";
    case Aggregation::kPerReportMedian:
      return "per-report-median";
  }
  return "per-report-median";
}

std::string distance_token(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kLevenshtein:
      return "levenshtein";
    case DistanceKind::kLevenshteinNormalized:
      return "levenshtein_normalized";
    case DistanceKind::kEmbeddingCosine:
      return "cosine";
  }
  return "cosine";
}

RunConfig load_run_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      if (!known_keys().count(section + "." + key)) {
        throw ConfigError("unknown config key " + section + "." + key);
      }
    }
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("config key outside a section: " + section);
    }
  }

  const auto base = std::filesystem::absolute(path).parent_path();
  RunConfig c;
  c.dataset = tree.get<std::string>("run.dataset", c.dataset);
  c.output_dir = resolve(base, tree.get<std::string>("run.output_dir", "out"));
  c.seed = get_value<std::uint64_t>(tree, "run.seed", 0);
  c.threads = get_value<std::size_t>(tree, "run.threads", 1);
  if (auto n = tree.get_optional<std::string>("run.sample_size")) {
    c.sample_size = get_value<std::size_t>(tree, "run.sample_size", 0);
  }

  auto reference = tree.get_optional<std::string>("inputs.reference_dir");
  auto predicted = tree.get_optional<std::string>("inputs.predicted_dir");
  if (!reference) throw ConfigError("missing inputs.reference_dir");
  if (!predicted) throw ConfigError("missing inputs.predicted_dir");
  c.reference_dir = resolve(base, *reference);
  c.predicted_dir = resolve(base, *predicted);
  c.reference_annotator = tree.get<std::string>("inputs.reference_annotator",
                                                c.reference_annotator);
  if (auto m = tree.get_optional<std::string>("inputs.manifest")) {
    c.manifest = resolve(base, *m);
  }

  c.metrics.s_max_hours =
      get_value<double>(tree, "metrics.s_max_hours", c.metrics.s_max_hours);
  c.metrics.cosine_cutoff =
      get_value<double>(tree, "metrics.cosine_cutoff", c.metrics.cosine_cutoff);
  std::string aggregation =
      tree.get<std::string>("metrics.aggregation", "per-report-median");
  if (aggregation == "pooled") {
    c.metrics.aggregation = Aggregation::kPooled;
  } else if (aggregation == "per-report-mean") {
    c.metrics.aggregation = Aggregation::kPerReportMean;
  } else if (aggregation == "per-report-median") {
    c.metrics.aggregation = Aggregation::kPerReportMedian;
  } else {
    throw ConfigError("unknown metrics.aggregation '" + aggregation + "'");
  }
  std::string weighting =
      tree.get<std::string>("metrics.aultc_weighting", "exact");
  if (weighting == "exact") {
    c.metrics.aultc_weighting = AultcWeighting::kExactArea;
  } else if (weighting == "displayed") {
    c.metrics.aultc_weighting = AultcWeighting::kDisplayedSum;
  } else {
    throw ConfigError("unknown metrics.aultc_weighting '" + weighting + "'");
  }

  std::string kind = tree.get<std::string>("distance.kind", "cosine");
  if (kind == "cosine") {
    c.distance = DistanceKind::kEmbeddingCosine;
  } else if (kind == "levenshtein") {
    c.distance = DistanceKind::kLevenshtein;
  } else if (kind == "levenshtein_normalized") {
    c.distance = DistanceKind::kLevenshteinNormalized;
  } else {
    throw ConfigError("unknown distance.kind '" + kind + "'");
  }
  std::string embedder = tree.get<std::string>("distance.embedder", "fallback");
  if (embedder == "fallback") {
    c.embedder = EmbedderKind::kFallback;
  } else if (embedder == "http") {
    c.embedder = EmbedderKind::kHttp;
  } else {
    throw ConfigError("unknown distance.embedder '" + embedder + "'");
  }
  c.embed_dim = get_value<std::size_t>(tree, "distance.embed_dim", c.embed_dim);
  c.embed_url = tree.get<std::string>("distance.embed_url", "");

  validate_run_config(c);
  return c;
}

void validate_run_config(const RunConfig& c) {
  namespace fs = std::filesystem;
  if (c.dataset.empty()) throw ConfigError("run.dataset is empty");
  if (!fs::is_directory(c.reference_dir)) {
    throw ConfigError("reference directory not found: " +
                      c.reference_dir.string());
  }
  if (!fs::is_directory(c.predicted_dir)) {
    throw ConfigError("predicted directory not found: " +
                      c.predicted_dir.string());
  }
  if (c.manifest && !fs::is_regular_file(*c.manifest)) {
    throw ConfigError("manifest not found: " + c.manifest->string());
  }
  if (c.sample_size && !c.manifest) {
    throw ConfigError("run.sample_size requires inputs.manifest");
  }
  if (!(c.metrics.s_max_hours > 0.0)) {
    throw ConfigError("metrics.s_max_hours must be positive");
  }
  if (c.output_dir.empty()) throw ConfigError("run.output_dir is empty");
  if (c.embed_dim < 8) throw ConfigError("distance.embed_dim must be >= 8");
  if (c.distance == DistanceKind::kEmbeddingCosine &&
      c.embedder == EmbedderKind::kHttp && c.embed_url.empty()) {
    throw ConfigError("distance.embed_url required for the http embedder");
  }
  if (c.threads == 0) throw ConfigError("run.threads must be >= 1");
}

std::string canonical_config_text(const RunConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "dataset=" << c.dataset << '\n'
      << "reference_dir=" << c.reference_dir.string() << '\n'
      << "reference_annotator=" << c.reference_annotator << '\n'
      << "predicted_dir=" << c.predicted_dir.string() << '\n'
      << "manifest=" << (c.manifest ? c.manifest->string() : "") << '\n'
      << "s_max_hours=" << c.metrics.s_max_hours << '\n'
      << "time_unit=" << MetricConfig::kTimeUnit << '\n'
      << "cosine_cutoff=" << c.metrics.cosine_cutoff << '\n'
      << "aggregation=" << aggregation_token(c.metrics.aggregation) << '\n'
      << "aultc_weighting="
      << (c.metrics.aultc_weighting == AultcWeighting::kExactArea ? "exact"
                                                                  : "displayed")
      << '\n'
      << "distance=" << distance_token(c.distance) << '\n'
      << "embedder="
      << (c.embedder == EmbedderKind::kFallback ? "fallback" : "http") << '\n'
      << "embed_dim=" << c.embed_dim << '\n'
      << "embed_url=" << c.embed_url << '\n'
      << "sample_size=" << (c.sample_size ? std::to_string(*c.sample_size) : "")
      << '\n'
      << "seed=" << c.seed << '\n'
      << "rng=" << kSamplingAlgorithm << '\n';
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  return sha256_hex(canonical_config_text(config));
}

}  // namespace ttseval
