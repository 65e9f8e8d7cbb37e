#include "ttseval/alignment.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ttseval/distance.h"
#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {

DistanceMatrix compute_distance_matrix(const std::vector<std::string>& ref,
                                       const std::vector<std::string>& pred,
                                       const DistanceSpec& spec) {
  DistanceMatrix m{ref.size(), pred.size(), {}};
  m.values.resize(ref.size() * pred.size());
  if (m.values.empty()) return m;

  if (spec.kind == DistanceKind::kEmbeddingCosine) {
    if (!spec.embedder) {
      throw PreconditionError("embedding distance requires an embedder");
    }
    // Embed each distinct trimmed text once, in first-seen order.
    std::map<std::string, std::size_t> slot;
    std::vector<std::string> unique;
    auto intern = [&](const std::string& text) {
      std::string key(trim(text));
      auto [it, inserted] = slot.emplace(key, unique.size());
      if (inserted) unique.push_back(key);
      return it->second;
    };
    std::vector<std::size_t> ref_slot, pred_slot;
    for (const auto& t : ref) ref_slot.push_back(intern(t));
    for (const auto& t : pred) pred_slot.push_back(intern(t));
    std::vector<Vector> vectors = spec.embedder->embed(unique);
    if (vectors.size() != unique.size()) {
      throw EmbedderError("embedder returned the wrong number of vectors");
    }
    for (std::size_t r = 0; r < ref.size(); ++r) {
      for (std::size_t c = 0; c < pred.size(); ++c) {
        m.values[r * m.cols + c] =
            cosine_distance(vectors[ref_slot[r]], vectors[pred_slot[c]]);
      }
    }
    return m;
  }

  std::vector<std::string> ref_norm, pred_norm;
  for (const auto& t : ref) ref_norm.push_back(normalize_finding_text(t));
  for (const auto& t : pred) pred_norm.push_back(normalize_finding_text(t));
  for (std::size_t r = 0; r < ref.size(); ++r) {
    for (std::size_t c = 0; c < pred.size(); ++c) {
      m.values[r * m.cols + c] =
          spec.kind == DistanceKind::kLevenshtein
              ? static_cast<double>(levenshtein(ref_norm[r], pred_norm[c]))
              : normalized_levenshtein(ref_norm[r], pred_norm[c]);
    }
  }
  return m;
}

AlignmentResult best_match_matrix(const DistanceMatrix& distances,
                                  std::span<const double> ref_times,
                                  std::span<const double> pred_times) {
  if (ref_times.size() != distances.rows ||
      pred_times.size() != distances.cols) {
    throw PreconditionError("best_match: time lists do not fit the matrix");
  }
  AlignmentResult result;
  result.n_ref = distances.rows;
  result.n_pred = distances.cols;

  // Flat index order equals (ref, pred) lexicographic order, so sorting by
  // (distance, flat index) reproduces the tie rule.
  std::vector<std::size_t> order(distances.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (double d : distances.values) {
    if (std::isnan(d)) throw PreconditionError("best_match: NaN distance");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double da = distances.values[a];
    double db = distances.values[b];
    return da < db || (da == db && a < b);
  });

  const std::size_t wanted = std::min(distances.rows, distances.cols);
  std::vector<bool> ref_used(distances.rows, false);
  std::vector<bool> pred_used(distances.cols, false);
  for (std::size_t flat : order) {
    if (result.pairs.size() == wanted) break;
    std::size_t r = flat / distances.cols;
    std::size_t c = flat % distances.cols;
    if (ref_used[r] || pred_used[c]) continue;
    ref_used[r] = true;
    pred_used[c] = true;
    result.pairs.push_back(
        {r, c, distances.values[flat], ref_times[r], pred_times[c]});
  }
  for (std::size_t r = 0; r < distances.rows; ++r) {
    if (!ref_used[r]) result.unmatched_ref.push_back(r);
  }
  for (std::size_t c = 0; c < distances.cols; ++c) {
    if (!pred_used[c]) result.unmatched_pred.push_back(c);
  }
  return result;
}

AlignmentResult best_match(const Annotation& ref, const Annotation& pred,
                           const DistanceSpec& spec) {
  std::vector<std::string> ref_text, pred_text;
  std::vector<double> ref_times, pred_times;
  for (const auto& f : ref.findings) {
    ref_text.push_back(f.text);
    ref_times.push_back(f.time_hours);
  }
  for (const auto& f : pred.findings) {
    pred_text.push_back(f.text);
    pred_times.push_back(f.time_hours);
  }
  return best_match_matrix(compute_distance_matrix(ref_text, pred_text, spec),
                           ref_times, pred_times);
}

std::vector<std::pair<double, double>> match_rate_curve(
    const AlignmentResult& alignment, const std::vector<double>& thresholds) {
  if (alignment.n_ref == 0) {
    throw UndefinedMetric("match rate undefined without reference findings");
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw PreconditionError("match_rate_curve: thresholds must ascend");
  }
  std::vector<double> sorted;
  for (const auto& p : alignment.pairs) sorted.push_back(p.distance);
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::pair<double, double>> curve;
  curve.reserve(thresholds.size());
  for (double threshold : thresholds) {
    auto count = std::upper_bound(sorted.begin(), sorted.end(), threshold) -
                 sorted.begin();
    curve.emplace_back(threshold, static_cast<double>(count) /
                                      static_cast<double>(alignment.n_ref));
  }
  return curve;
}

}  // namespace ttseval
