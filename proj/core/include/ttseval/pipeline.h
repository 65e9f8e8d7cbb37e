#ifndef TTSEVAL_PIPELINE_H_
#define TTSEVAL_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttseval/alignment.h"
#include "ttseval/corpus.h"
#include "ttseval/llm_client.h"
#include "ttseval/manifest.h"
#include "ttseval/metrics.h"
#include "ttseval/run_config.h"

namespace ttseval {

struct StageFailure {
  std::string doc_id;
  std::string stage;  // "phenotype", "annotate", "evaluate:<model>/<variant>"
  std::string reason;
};

// --- phenotype / annotate stages -------------------------------------------

// Bodies of the requested documents, read in one pass over the corpus.
std::map<std::string, std::string> load_bodies(
    DocumentSource& source, const std::vector<std::string>& doc_ids);

struct PhenotypeOptions {
  std::vector<std::string> models;
  // Model asked for case count, age and gender; empty skips the query.
  std::string demographics_model;
  DispatchOptions dispatch;
};

// Queries every screened candidate (both screens passed) with each model,
// records the votes and demographics, then re-derives inclusion.
std::vector<StageFailure> run_phenotype_stage(
    CohortManifest& manifest, const std::map<std::string, std::string>& bodies,
    ChatClient& client, const PhenotypeOptions& options);

struct AnnotateOptions {
  std::string model;
  PromptVariant variant = PromptVariant::kMain;
  std::filesystem::path output_dir;
  DispatchOptions dispatch;
};

// Writes `<doc_id>.<model>.<variant>.bsv` for every document in `bodies`.
std::vector<StageFailure> run_annotate_stage(
    const std::map<std::string, std::string>& bodies, ChatClient& client,
    const AnnotateOptions& options);

// --- evaluation ------------------------------------------------------------

struct ReportMetrics {
  std::string doc_id;
  std::size_t n_ref = 0;
  std::size_t n_pred = 0;
  std::size_t n_pairs = 0;
  std::size_t n_matched = 0;  // pairs within the distance cutoff
  double match_rate = 0.0;
  std::optional<double> adjusted_match_rate;
  std::optional<double> c_index;
  std::optional<double> c_index_iqr;
  std::optional<double> mae_hours;
  std::optional<double> aultc;
};

// One (dataset, model, variant) row of the results table.
struct MetricsRecord {
  std::string dataset;
  std::string model;
  std::string variant;
  double event_match_rate = 0.0;              // pooled over reference findings
  double event_match_rate_mean = 0.0;         // mean of per-report rates
  std::optional<double> adjusted_match_rate;  // pooled over pairs
  std::optional<double> c_median;             // median of per-report c-index
  std::optional<double> c_aggregate;          // per config aggregation
  std::optional<double> c_iqr_aggregate;      // after IQR outlier removal
  std::optional<double> mae_hours;            // pooled median
  std::optional<double> aultc;                // pooled
  double s_max_hours = 0.0;
  std::string time_unit;
  std::string aggregation;
  std::size_t n_reports = 0;
  std::size_t n_ref_events = 0;
  std::size_t n_pred_events = 0;
  std::size_t n_pairs = 0;
  std::size_t n_matched = 0;
  std::size_t n_under_identified = 0;
  std::size_t n_over_identified = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string distance;
};

struct EvaluationSummary {
  std::vector<MetricsRecord> records;
  std::vector<StageFailure> failures;
  std::size_t documents_evaluated = 0;
};

// Aligns every predicted annotator/variant against the reference
// annotations and writes, under <output_dir>/<dataset>/:
//
//   run.json, failures.csv, summary.csv
//   <model>/<variant>/metrics.csv, metrics.json, per_report.csv,
//     match_rate_curve.csv, alignments/<doc_id>.tsv,
//     cdf/pooled.csv, cdf/bucket_<range>.csv
//
// Temporal metrics use the pairs within the distance cutoff. Output bytes
// depend only on the config, its inputs and the embedder.
// Throws ConfigError for an invalid config and Error when no document
// could be evaluated.
EvaluationSummary run_evaluation(const RunConfig& config);

// Same, with an explicit embedder (tests, shared HTTP clients).
EvaluationSummary run_evaluation(const RunConfig& config,
                                 std::shared_ptr<Embedder> embedder);

// Rows of every metrics.json found below `root`, sorted by
// (dataset, model, variant).
std::vector<MetricsRecord> collect_metrics(const std::filesystem::path& root);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRecord& record);
std::string metrics_to_json(const MetricsRecord& record);
MetricsRecord metrics_from_json(const std::string& text);

// Threshold grid of the match-rate curve for a distance kind.
std::vector<double> curve_thresholds(DistanceKind kind);

// Shortest round-trip decimal, "NA" for missing values.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

}  // namespace ttseval

#endif  // TTSEVAL_PIPELINE_H_
