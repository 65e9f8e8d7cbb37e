#ifndef TTSEVAL_SAMPLING_H_
#define TTSEVAL_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ttseval/manifest.h"

namespace ttseval {

// Recorded next to every sample so it can be reproduced elsewhere:
// std::mt19937_64 seeded with the run seed, partial Fisher-Yates over the
// doc_id-sorted included records, bounded draws by rejection sampling.
inline constexpr const char* kSamplingAlgorithm =
    "mt19937_64/fisher-yates/rejection";

// Uniform draw of n included doc ids without replacement, returned sorted.
// Throws PreconditionError when n exceeds the number of included records.
std::vector<std::string> sample_cohort(const CohortManifest& manifest,
                                       std::size_t n, std::uint64_t seed);

struct DemographicsSummary {
  std::size_t n_records = 0;
  std::size_t n_with_gender = 0;
  std::size_t n_with_age = 0;
  double percent_male = 0.0;
  double percent_female = 0.0;
  double age_mean = 0.0;
  double age_q1 = 0.0;
  double age_median = 0.0;
  double age_q3 = 0.0;
  int age_min = 0;
  int age_max = 0;
};

// Gender shares over records with a known gender; age quartiles use the
// same interpolation as the IQR filter. Throws UndefinedMetric when no
// record carries demographics.
DemographicsSummary demographics_summary(const CohortManifest& manifest,
                                         bool included_only = true);

}  // namespace ttseval

#endif  // TTSEVAL_SAMPLING_H_
