#ifndef TTSEVAL_ERROR_ANALYSIS_H_
#define TTSEVAL_ERROR_ANALYSIS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttseval/alignment.h"
#include "ttseval/llm_parsers.h"

namespace ttseval {

// Match rate over matched pairs only, so reference findings left without a
// counterpart do not count against the annotator. Throws UndefinedMetric
// when there are no pairs.
double adjusted_match_rate(const AlignmentResult& alignment, double cutoff);

// Reference findings the annotator missed and extra predicted findings.
struct IdentificationCounts {
  std::size_t under_identified = 0;
  std::size_t over_identified = 0;
};

IdentificationCounts identification_counts(const AlignmentResult& alignment);

struct IqrFilterResult {
  std::vector<MatchedPair> pairs;
  double q1 = 0.0;
  double q3 = 0.0;
  double lower_fence = 0.0;
  double upper_fence = 0.0;
  std::optional<std::string> warning;  // set when fewer than 4 pairs
};

// Drops pairs whose signed difference t_pred - t_ref falls outside
// [Q1 - 1.5 IQR, Q3 + 1.5 IQR]. With fewer than 4 pairs the input comes back
// unchanged with a warning.
IqrFilterResult iqr_filter(std::span<const MatchedPair> pairs);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
};

MeanSd mean_sd(std::span<const double> values);

// Per-report fraction of aligned pairs whose two findings received the same
// category, then mean and sd over reports. Reports without pairs are
// skipped; throws UndefinedMetric if nothing is left.
using CategoryPair = std::pair<CategoryLabel, CategoryLabel>;  // (ref, pred)
MeanSd category_alignment_rate(
    const std::vector<std::vector<CategoryPair>>& reports);

// One report's alignment plus the category of every reference finding.
struct CategorizedAlignment {
  AlignmentResult alignment;
  std::vector<CategoryLabel> ref_categories;  // indexed like the references
};

// Match rate restricted to the reference findings of each category,
// averaged across the reports that have such findings. Categories without
// any reference finding are absent from the result.
std::map<int, MeanSd> per_category_match_rate(
    const std::vector<CategorizedAlignment>& reports, double cutoff);

}  // namespace ttseval

#endif  // TTSEVAL_ERROR_ANALYSIS_H_
