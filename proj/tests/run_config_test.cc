#include "ttseval/run_config.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "ttseval/errors.h"

namespace ttseval {
namespace {

namespace fs = std::filesystem;

class RunConfigTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "ttseval_run_config";
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "ref");
    fs::create_directories(dir_ / "pred");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& body) {
    fs::path path = dir_ / "config.ini";
    std::ofstream(path) << body;
    return path;
  }

  static std::string minimal(const std::string& extra = "") {
    return "[run]\ndataset = demo\n" + extra +
           "[inputs]\nreference_dir = ref\npredicted_dir = pred\n";
  }

  fs::path dir_;
};

TEST_F(RunConfigTest, DefaultsAndRelativePaths) {
  RunConfig c = load_run_config(write(minimal()));
  EXPECT_EQ(c.dataset, "demo");
  EXPECT_EQ(c.reference_dir, (dir_ / "ref").lexically_normal());
  EXPECT_EQ(c.output_dir, (dir_ / "out").lexically_normal());
  EXPECT_EQ(c.metrics.s_max_hours, 8760.0);
  EXPECT_EQ(c.metrics.cosine_cutoff, 0.1);
  EXPECT_EQ(c.metrics.aggregation, Aggregation::kPerReportMedian);
  EXPECT_EQ(c.metrics.aultc_weighting, AultcWeighting::kExactArea);
  EXPECT_EQ(c.distance, DistanceKind::kEmbeddingCosine);
  EXPECT_EQ(c.embedder, EmbedderKind::kFallback);
  EXPECT_EQ(c.threads, 1u);
}

TEST_F(RunConfigTest, ParsesEverySection) {
  RunConfig c = load_run_config(write(
      "[run]\ndataset = d\nseed = 42\nthreads = 3\noutput_dir = /tmp/x\n"
      "[inputs]\nreference_dir = ref\npredicted_dir = pred\n"
      "reference_annotator = clinician\n"
      "[metrics]\ns_max_hours = 24\ncosine_cutoff = 0.2\naggregation = pooled\n"
      "aultc_weighting = displayed\n"
      "[distance]\nkind = levenshtein_normalized\nembed_dim = 64\n"));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.threads, 3u);
  EXPECT_EQ(c.output_dir, fs::path("/tmp/x"));
  EXPECT_EQ(c.reference_annotator, "clinician");
  EXPECT_EQ(c.metrics.s_max_hours, 24.0);
  EXPECT_EQ(c.metrics.cosine_cutoff, 0.2);
  EXPECT_EQ(c.metrics.aggregation, Aggregation::kPooled);
  EXPECT_EQ(c.metrics.aultc_weighting, AultcWeighting::kDisplayedSum);
  EXPECT_EQ(c.distance, DistanceKind::kLevenshteinNormalized);
  EXPECT_EQ(c.embed_dim, 64u);
}

TEST_F(RunConfigTest, RejectsBadInput) {
  EXPECT_THROW(load_run_config(dir_ / "absent.ini"), ConfigError);
  EXPECT_THROW(load_run_config(write(minimal("colour = blue\n"))), ConfigError);
  EXPECT_THROW(load_run_config(write(minimal("seed = -x\n"))), ConfigError);
  EXPECT_THROW(load_run_config(write(minimal("threads = 0\n"))), ConfigError);
  EXPECT_THROW(load_run_config(write(minimal("sample_size = 3\n"))),
               ConfigError);
  EXPECT_THROW(
      load_run_config(write(minimal() + "[metrics]\ns_max_hours = 0\n")),
      ConfigError);
  EXPECT_THROW(
      load_run_config(write(minimal() + "[metrics]\naggregation = max\n")),
      ConfigError);
  EXPECT_THROW(load_run_config(write(minimal() + "[distance]\nkind = bert\n")),
               ConfigError);
  EXPECT_THROW(
      load_run_config(write(minimal() + "[distance]\nembedder = http\n")),
      ConfigError);
  EXPECT_THROW(
      load_run_config(write("[run]\ndataset = d\n[inputs]\n"
                            "reference_dir = nowhere\npredicted_dir = pred\n")),
      ConfigError);
  EXPECT_THROW(load_run_config(write("[inputs]\npredicted_dir = pred\n")),
               ConfigError);
}

TEST_F(RunConfigTest, HashCoversResultsButNotOutputDir) {
  RunConfig a = load_run_config(write(minimal()));
  RunConfig b = a;
  b.output_dir = "/elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 64u);
  b = a;
  b.seed = 1;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.metrics.s_max_hours = 24;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.distance = DistanceKind::kLevenshtein;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_NE(canonical_config_text(a).find("time_unit=hours\n"),
            std::string::npos);
  EXPECT_NE(canonical_config_text(a).find("rng=mt19937_64"), std::string::npos);
}

TEST(Tokens, RoundNames) {
  EXPECT_EQ(aggregation_token(Aggregation::kPerReportMean), "per-report-mean");
  EXPECT_EQ(distance_token(DistanceKind::kLevenshtein), "levenshtein");
}

}  // namespace
}  // namespace ttseval
