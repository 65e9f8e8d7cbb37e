#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ttseval/errors.h"
#include "ttseval/manifest.h"
#include "ttseval/sampling.h"

namespace ttseval {
namespace {

namespace fs = std::filesystem;

ManifestRecord record(std::string id, bool included = true) {
  ManifestRecord r;
  r.doc_id = std::move(id);
  r.is_case_report = true;
  r.is_sepsis_candidate = true;
  r.included = included;
  return r;
}

CohortManifest cohort(std::size_t n) {
  CohortManifest m;
  for (std::size_t i = 0; i < n; ++i) {
    m.records.push_back(record("PMC" + std::to_string(1000 + i), i % 4 != 3));
  }
  return m;
}

TEST(UpdateInclusion, Rules) {
  ManifestRecord r = record("a", false);
  update_inclusion(r);
  EXPECT_TRUE(r.included);
  r.phenotypes = {{"m1", 0}, {"m2", 1}};
  update_inclusion(r);
  EXPECT_TRUE(r.included);
  r.phenotypes = {{"m1", 0}, {"m2", 0}};
  update_inclusion(r);
  EXPECT_FALSE(r.included);
  r.phenotypes = {{"m1", 1}};
  r.n_cases = 2;
  update_inclusion(r);
  EXPECT_FALSE(r.included);
  r.n_cases = 1;
  r.is_case_report = false;
  update_inclusion(r);
  EXPECT_FALSE(r.included);
}

TEST(ManifestJson, RoundTrip) {
  ManifestRecord r = record("PMC1");
  r.phenotypes = {{"llama", 1}, {"qwen", 0}};
  r.n_cases = 1;
  r.age = 49;
  r.gender = "male";
  EXPECT_EQ(manifest_record_from_json(manifest_record_to_json(r)), r);
  ManifestRecord bare = record("PMC2", false);
  EXPECT_EQ(manifest_record_from_json(manifest_record_to_json(bare)), bare);
  EXPECT_THROW(manifest_record_from_json("{"), DecodeError);
  EXPECT_THROW(manifest_record_from_json("{\"doc_id\": 3}"), DecodeError);
}

TEST(ManifestFile, WriteThenRead) {
  fs::path path = fs::temp_directory_path() / "ttseval_manifest.jsonl";
  CohortManifest m = cohort(5);
  write_manifest(path, m);
  CohortManifest back = read_manifest(path);
  EXPECT_EQ(back.records, m.records);
  fs::remove(path);
}

TEST(SampleCohort, Examples) {
  CohortManifest m = cohort(12);
  std::vector<std::string> included;
  for (const auto& r : m.records) {
    if (r.included) included.push_back(r.doc_id);
  }
  EXPECT_EQ(sample_cohort(m, included.size(), 5), included);
  EXPECT_TRUE(sample_cohort(m, 0, 5).empty());
  EXPECT_EQ(sample_cohort(m, 4, 5), sample_cohort(m, 4, 5));
  EXPECT_THROW(sample_cohort(m, included.size() + 1, 5), PreconditionError);
}

TEST(SampleCohort, SortedSubsetOfIncludedAndInputOrderFree) {
  CohortManifest m = cohort(40);
  CohortManifest reversed = m;
  std::reverse(reversed.records.begin(), reversed.records.end());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = sample_cohort(m, 10, seed);
    EXPECT_EQ(s, sample_cohort(reversed, 10, seed));
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), 10u);
    for (const auto& id : s) {
      auto it =
          std::find_if(m.records.begin(), m.records.end(),
                       [&](const ManifestRecord& r) { return r.doc_id == id; });
      ASSERT_NE(it, m.records.end());
      EXPECT_TRUE(it->included);
    }
  }
}

// Every included document is drawn with probability n / N; a loose band
// catches a biased shuffle without making the test flaky.
TEST(SampleCohort, RoughlyUniform) {
  CohortManifest m = cohort(8);  // 6 included
  std::map<std::string, int> counts;
  const int kTrials = 6000;
  for (int seed = 0; seed < kTrials; ++seed) {
    for (const auto& id : sample_cohort(m, 2, seed)) ++counts[id];
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [id, c] : counts) {
    EXPECT_NEAR(c, kTrials * 2 / 6, 200) << id;
  }
}

TEST(DemographicsSummary, Examples) {
  CohortManifest m;
  const std::vector<std::pair<int, const char*>> people = {
      {30, "male"}, {40, "female"}, {50, "male"}, {60, "female"}};
  for (std::size_t i = 0; i < people.size(); ++i) {
    ManifestRecord r = record("d" + std::to_string(i));
    r.age = people[i].first;
    r.gender = people[i].second;
    m.records.push_back(r);
  }
  auto s = demographics_summary(m);
  EXPECT_EQ(s.percent_male, 50.0);
  EXPECT_EQ(s.percent_female, 50.0);
  EXPECT_EQ(s.age_mean, 45.0);
  EXPECT_EQ(s.age_q1, 37.5);
  EXPECT_EQ(s.age_q3, 52.5);
  EXPECT_EQ(s.age_min, 30);
  EXPECT_EQ(s.age_max, 60);

  CohortManifest one;
  one.records.push_back(record("x"));
  one.records[0].age = 49;
  one.records[0].gender = "male";
  s = demographics_summary(one);
  EXPECT_EQ(s.percent_male, 100.0);
  EXPECT_EQ(s.percent_female, 0.0);
  EXPECT_EQ(s.age_mean, 49.0);

  CohortManifest range;
  for (int age : {0, 111}) {
    range.records.push_back(record("r" + std::to_string(age)));
    range.records.back().age = age;
  }
  s = demographics_summary(range);
  EXPECT_EQ(s.age_min, 0);
  EXPECT_EQ(s.age_max, 111);
  EXPECT_EQ(s.n_with_gender, 0u);
}

TEST(DemographicsSummary, IncludedOnlyAndNoData) {
  CohortManifest m = cohort(4);
  EXPECT_THROW(demographics_summary(m), UndefinedMetric);
  m.records[3].age = 70;  // excluded record
  EXPECT_THROW(demographics_summary(m), UndefinedMetric);
  EXPECT_EQ(demographics_summary(m, false).age_mean, 70.0);
}

}  // namespace
}  // namespace ttseval
