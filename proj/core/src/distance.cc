#include "ttseval/distance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  // Common affixes never contribute.
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  // Single row over the shorter string.
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      std::size_t substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitution});
      diagonal = above;
    }
  }
  return row[b.size()];
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return edit_distance(utf8_to_u32(a), utf8_to_u32(b));
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
  std::u32string ua = utf8_to_u32(a);
  std::u32string ub = utf8_to_u32(b);
  std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(edit_distance(ua, ub)) /
         static_cast<double>(longest);
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw PreconditionError("cosine_distance: dimension mismatch");
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw ZeroVector("cosine_distance: zero-norm vector");
  }
  double distance = 1.0 - dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(distance, 0.0, 2.0);
}

}  // namespace ttseval
