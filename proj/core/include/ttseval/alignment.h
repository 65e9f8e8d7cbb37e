#ifndef TTSEVAL_ALIGNMENT_H_
#define TTSEVAL_ALIGNMENT_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttseval/embedder.h"
#include "ttseval/finding.h"

namespace ttseval {

enum class DistanceKind {
  kLevenshtein,            // raw edit count
  kLevenshteinNormalized,  // edit count / longer length
  kEmbeddingCosine,
};

struct DistanceSpec {
  DistanceKind kind = DistanceKind::kEmbeddingCosine;
  std::shared_ptr<Embedder> embedder;  // required for kEmbeddingCosine
};

struct MatchedPair {
  std::size_t ref_index = 0;
  std::size_t pred_index = 0;
  double distance = 0.0;
  double t_ref = 0.0;
  double t_pred = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// Injective pairing of reference and predicted findings. Pairs appear in
// selection order; unmatched index lists are ascending.
struct AlignmentResult {
  std::vector<MatchedPair> pairs;
  std::vector<std::size_t> unmatched_ref;
  std::vector<std::size_t> unmatched_pred;
  std::size_t n_ref = 0;
  std::size_t n_pred = 0;

  friend bool operator==(const AlignmentResult&,
                         const AlignmentResult&) = default;
};

// Row-major n_ref x n_pred distances.
struct DistanceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// Levenshtein kinds compare normalized text (trimmed, whitespace collapsed,
// case-folded); embeddings see the trimmed original text. Every distinct
// text is embedded once.
DistanceMatrix compute_distance_matrix(const std::vector<std::string>& ref,
                                       const std::vector<std::string>& pred,
                                       const DistanceSpec& spec);

// Greedy global-minimum matching on a precomputed matrix: repeatedly take
// the smallest remaining distance, ties to the smaller reference index and
// then the smaller predicted index, until one side is exhausted.
AlignmentResult best_match_matrix(const DistanceMatrix& distances,
                                  std::span<const double> ref_times,
                                  std::span<const double> pred_times);

AlignmentResult best_match(const Annotation& ref, const Annotation& pred,
                           const DistanceSpec& spec);

// rate(threshold) = |pairs with distance <= threshold| / n_ref.
// Throws UndefinedMetric when n_ref is 0.
std::vector<std::pair<double, double>> match_rate_curve(
    const AlignmentResult& alignment, const std::vector<double>& thresholds);

}  // namespace ttseval

#endif  // TTSEVAL_ALIGNMENT_H_
