#ifndef TTSEVAL_DISTANCE_H_
#define TTSEVAL_DISTANCE_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace ttseval {

// Edit distance over Unicode code points (UTF-8 input) with unit-cost
// insertions, deletions and substitutions.
std::size_t levenshtein(std::string_view a, std::string_view b);

// levenshtein / max(len(a), len(b)) in code points; 0 for two empty strings.
double normalized_levenshtein(std::string_view a, std::string_view b);

// 1 - cos(u, v), clamped to [0, 2]. Throws ZeroVector for a zero-norm input
// and PreconditionError on a dimension mismatch.
double cosine_distance(std::span<const double> u, std::span<const double> v);

}  // namespace ttseval

#endif  // TTSEVAL_DISTANCE_H_
