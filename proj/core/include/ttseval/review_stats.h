#ifndef TTSEVAL_REVIEW_STATS_H_
#define TTSEVAL_REVIEW_STATS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttseval {

// 2x2 phenotype confusion matrix. Rows are annotator A, columns are the
// preferred annotator B: yes_no means A said yes and B said no.
struct ConfusionMatrix2x2 {
  int yes_yes = 0;
  int yes_no = 0;
  int no_yes = 0;
  int no_no = 0;

  int total() const { return yes_yes + yes_no + no_yes + no_no; }
};

struct Agreement {
  double agreement = 0.0;
  // Accuracy of A when B is taken as ground truth; equal to agreement.
  double accuracy_if_reference = 0.0;
};

// Throws UndefinedMetric for an empty matrix.
Agreement confusion_agreement(const ConfusionMatrix2x2& m);

enum class Quality { kExcellent = 0, kGood, kAcceptable, kPoor };

std::optional<Quality> quality_from_name(std::string_view name);
std::string_view quality_name(Quality quality);

struct RankEntry {
  std::string annotator_id;
  int rank = 0;  // 1 = best; tied annotations share the lower rank
  Quality quality = Quality::kPoor;
};

struct ReportRanking {
  std::string doc_id;
  std::vector<RankEntry> entries;
};

struct ReviewSummary {
  double mean_rank = 0.0;
  double top1 = 0.0;
  // Fraction of reports where the annotator ranks best among the LLM
  // annotators only; nullopt for the manual annotator itself.
  std::optional<double> top1_llm;
  // Cumulative: at_least[Good] includes Excellent.
  std::map<Quality, double> at_least;
};

// Throws PreconditionError when a report misses an annotator that appears
// elsewhere or lists one twice.
std::map<std::string, ReviewSummary> review_stats(
    const std::vector<ReportRanking>& reports,
    std::string_view manual_annotator_id);

// Review rankings as CSV with a header row and columns
// doc_id,annotator_id,rank,quality. Reports come back sorted by doc_id.
// Throws DecodeError on a malformed row.
std::vector<ReportRanking> parse_rankings_csv(std::string_view text);

}  // namespace ttseval

#endif  // TTSEVAL_REVIEW_STATS_H_
