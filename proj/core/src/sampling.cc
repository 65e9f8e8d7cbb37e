#include "ttseval/sampling.h"

#include <algorithm>
#include <limits>
#include <random>

#include "ttseval/errors.h"
#include "ttseval/metrics.h"

namespace ttseval {
namespace {

// Uniform integer in [0, bound) by rejection; portable, unlike
// std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound);
  while (true) {
    std::uint64_t draw = rng();
    if (draw < limit) return draw % bound;
  }
}

}  // namespace

std::vector<std::string> sample_cohort(const CohortManifest& manifest,
                                       std::size_t n, std::uint64_t seed) {
  std::vector<std::string> pool;
  for (const auto& r : manifest.records) {
    if (r.included) pool.push_back(r.doc_id);
  }
  std::sort(pool.begin(), pool.end());
  if (n > pool.size()) {
    throw PreconditionError("sample of " + std::to_string(n) +
                            " requested from " + std::to_string(pool.size()) +
                            " included documents");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + bounded(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  return pool;
}

DemographicsSummary demographics_summary(const CohortManifest& manifest,
                                         bool included_only) {
  DemographicsSummary s;
  std::size_t male = 0;
  std::size_t female = 0;
  std::vector<double> ages;
  for (const auto& r : manifest.records) {
    if (included_only && !r.included) continue;
    ++s.n_records;
    if (r.gender) {
      ++s.n_with_gender;
      if (*r.gender == "male") ++male;
      if (*r.gender == "female") ++female;
    }
    if (r.age) ages.push_back(*r.age);
  }
  s.n_with_age = ages.size();
  if (s.n_with_gender == 0 && ages.empty()) {
    throw UndefinedMetric("no demographic data in manifest");
  }
  if (s.n_with_gender > 0) {
    s.percent_male = 100.0 * male / s.n_with_gender;
    s.percent_female = 100.0 * female / s.n_with_gender;
  }
  if (!ages.empty()) {
    double sum = 0.0;
    for (double a : ages) sum += a;
    s.age_mean = sum / ages.size();
    s.age_q1 = quantile(ages, 0.25);
    s.age_median = quantile(ages, 0.5);
    s.age_q3 = quantile(ages, 0.75);
    auto [lo, hi] = std::minmax_element(ages.begin(), ages.end());
    s.age_min = static_cast<int>(*lo);
    s.age_max = static_cast<int>(*hi);
  }
  return s;
}

}  // namespace ttseval
