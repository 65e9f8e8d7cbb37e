// ttseval: corpus screening, LLM annotation and temporal evaluation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttseval/alignment.h"
#include "ttseval/annotation_table.h"
#include "ttseval/corpus.h"
#include "ttseval/errors.h"
#include "ttseval/llm_client.h"
#include "ttseval/manifest.h"
#include "ttseval/pipeline.h"
#include "ttseval/review_stats.h"
#include "ttseval/run_config.h"
#include "ttseval/sampling.h"
#include "ttseval/text.h"

namespace {

namespace fs = std::filesystem;
using namespace ttseval;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct EndpointFlags {
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string cache_dir = "cache";
  int max_retries = 3;
  std::size_t parallelism = 4;
  int min_interval_ms = 0;

  void attach(CLI::App* app) {
    app->add_option("--endpoint", base_url,
                    "Chat-completions base URL, scheme://host[:port]")
        ->required();
    app->add_option("--path", path, "Request path")->capture_default_str();
    app->add_option("--api-key-env", api_key_env,
                    "Environment variable holding the bearer token")
        ->capture_default_str();
    app->add_option("--cache", cache_dir, "Response cache directory")
        ->capture_default_str();
    app->add_option("--retries", max_retries, "Retries per request")
        ->capture_default_str();
    app->add_option("--parallelism", parallelism, "Concurrent requests")
        ->capture_default_str();
    app->add_option("--min-interval-ms", min_interval_ms,
                    "Minimum spacing between request starts")
        ->capture_default_str();
  }

  Endpoint endpoint() const {
    Endpoint e;
    e.base_url = base_url;
    e.path = path;
    e.api_key_env = api_key_env;
    e.cache_dir = cache_dir;
    e.max_retries = max_retries;
    return e;
  }

  DispatchOptions dispatch() const {
    DispatchOptions d;
    d.parallelism = parallelism;
    d.min_interval = std::chrono::milliseconds(min_interval_ms);
    return d;
  }
};

void print_failures(const std::vector<StageFailure>& failures) {
  for (const auto& f : failures) {
    std::cerr << "failed " << f.stage << " " << f.doc_id << ": " << f.reason
              << "\n";
  }
}

std::vector<std::string> included_ids(const CohortManifest& manifest) {
  std::vector<std::string> ids;
  for (const auto& r : manifest.records) {
    if (r.included) ids.push_back(r.doc_id);
  }
  return ids;
}

std::vector<std::string> candidate_ids(const CohortManifest& manifest) {
  std::vector<std::string> ids;
  for (const auto& r : manifest.records) {
    if (r.is_case_report && r.is_sepsis_candidate) ids.push_back(r.doc_id);
  }
  return ids;
}

std::shared_ptr<Embedder> make_embedder(const std::string& kind,
                                        const std::string& url,
                                        std::size_t dim) {
  if (kind == "http") {
    if (url.empty()) throw ConfigError("--embed-url is required for http");
    return std::make_shared<HttpEmbedder>(url);
  }
  return std::make_shared<FallbackEmbedder>(dim);
}

// --- subcommands -----------------------------------------------------------

int cmd_filter(const std::string& input, const std::string& out,
               const std::vector<std::string>& screen_names,
               std::size_t workers) {
  FilterOptions options;
  options.screens.clear();
  for (const auto& name : screen_names) {
    auto screen = screen_by_name(name);
    if (!screen) throw ConfigError("unknown screen '" + name + "'");
    options.screens.push_back(*screen);
  }
  options.workers = workers;
  auto source = open_corpus(input);
  FilterResult result = filter_corpus(*source, options);
  write_manifest(out, result.manifest);
  std::size_t candidates = 0;
  for (const auto& r : result.manifest.records) {
    if (r.is_case_report && r.is_sepsis_candidate) ++candidates;
  }
  for (const auto& f : result.failures) {
    std::cerr << "skipped " << f.doc_id << ": " << f.reason << "\n";
  }
  std::cout << "documents " << result.documents_seen << ", records "
            << result.manifest.records.size() << ", candidates " << candidates
            << ", failures " << result.failures.size() << "\n";
  return 0;
}

int cmd_sample(const std::string& manifest_path, std::size_t n,
               std::uint64_t seed, const std::string& out) {
  auto ids = sample_cohort(read_manifest(manifest_path), n, seed);
  std::ostringstream text;
  text << "# seed=" << seed << " n=" << n << " algorithm=" << kSamplingAlgorithm
       << "\n";
  for (const auto& id : ids) text << id << "\n";
  if (out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream(out, std::ios::binary) << text.str();
  }
  return 0;
}

int cmd_phenotype(const std::string& manifest_path, const std::string& corpus,
                  const std::vector<std::string>& models,
                  const std::string& demographics_model, const std::string& out,
                  const EndpointFlags& flags) {
  CohortManifest manifest = read_manifest(manifest_path);
  auto source = open_corpus(corpus);
  auto bodies = load_bodies(*source, candidate_ids(manifest));
  ChatClient client(flags.endpoint());
  PhenotypeOptions options{models, demographics_model, flags.dispatch()};
  auto failures = run_phenotype_stage(manifest, bodies, client, options);
  write_manifest(out.empty() ? manifest_path : out, manifest);
  print_failures(failures);
  std::cout << "included " << included_ids(manifest).size() << ", failures "
            << failures.size() << ", network calls " << client.network_calls()
            << ", cache hits " << client.cache_hits() << "\n";
  return 0;
}

int cmd_annotate(const std::string& manifest_path, const std::string& corpus,
                 const std::string& model, const std::string& variant_name,
                 const std::string& out_dir, std::optional<std::size_t> n,
                 std::uint64_t seed, const EndpointFlags& flags) {
  auto variant = variant_from_token(variant_name);
  if (!variant) throw ConfigError("unknown variant '" + variant_name + "'");
  CohortManifest manifest = read_manifest(manifest_path);
  auto ids = n ? sample_cohort(manifest, *n, seed) : included_ids(manifest);
  auto source = open_corpus(corpus);
  auto bodies = load_bodies(*source, ids);
  std::vector<StageFailure> failures;
  for (const auto& id : ids) {
    if (!bodies.count(id)) {
      failures.push_back({id, "annotate", "document body not found"});
    }
  }
  ChatClient client(flags.endpoint());
  AnnotateOptions options{model, *variant, out_dir, flags.dispatch()};
  auto stage = run_annotate_stage(bodies, client, options);
  failures.insert(failures.end(), stage.begin(), stage.end());
  print_failures(failures);
  std::cout << "annotated " << bodies.size() - stage.size() << " of "
            << ids.size() << ", network calls " << client.network_calls()
            << ", cache hits " << client.cache_hits() << "\n";
  return bodies.size() == stage.size() ? kExitFailure : 0;
}

int cmd_align(const std::string& ref_path, const std::string& pred_path,
              const std::string& distance, const std::string& embedder_kind,
              const std::string& embed_url, std::size_t dim, double cutoff) {
  DistanceSpec spec;
  if (distance == "levenshtein") {
    spec.kind = DistanceKind::kLevenshtein;
  } else if (distance == "levenshtein_normalized") {
    spec.kind = DistanceKind::kLevenshteinNormalized;
  } else if (distance == "cosine") {
    spec.kind = DistanceKind::kEmbeddingCosine;
    spec.embedder = make_embedder(embedder_kind, embed_url, dim);
  } else {
    throw ConfigError("unknown distance '" + distance + "'");
  }
  Annotation ref = read_annotation_file(ref_path);
  Annotation pred = read_annotation_file(pred_path);
  AlignmentResult result = best_match(ref, pred, spec);
  std::cout << "ref_index\tpred_index\tref_text\tpred_text\tdistance\tt_ref\t"
               "t_pred\n";
  for (const auto& p : result.pairs) {
    std::cout << p.ref_index << '\t' << p.pred_index << '\t'
              << ref.findings[p.ref_index].text << '\t'
              << pred.findings[p.pred_index].text << '\t'
              << format_number(p.distance) << '\t' << format_number(p.t_ref)
              << '\t' << format_number(p.t_pred) << '\n';
  }
  std::cerr << "pairs " << result.pairs.size() << ", unmatched ref "
            << result.unmatched_ref.size() << ", unmatched pred "
            << result.unmatched_pred.size() << ", match rate "
            << format_number(event_match_rate(result, cutoff)) << "\n";
  return 0;
}

int cmd_evaluate(const std::string& config_path) {
  RunConfig config = load_run_config(config_path);
  EvaluationSummary summary = run_evaluation(config);
  print_failures(summary.failures);
  std::cout << metrics_csv_header() << "\n";
  for (const auto& r : summary.records) {
    std::cout << metrics_csv_row(r) << "\n";
  }
  std::cerr << "documents evaluated " << summary.documents_evaluated
            << ", failures " << summary.failures.size() << ", output "
            << (config.output_dir / config.dataset).string() << "\n";
  return 0;
}

int cmd_report_metrics(const std::string& root) {
  auto records = collect_metrics(root);
  std::printf("%-12s %-22s %-13s %8s %8s %10s %8s %8s %7s\n", "dataset",
              "model", "variant", "match", "c", "mae_h", "aultc", "s_max_h",
              "reports");
  for (const auto& r : records) {
    std::printf("%-12s %-22s %-13s %8s %8s %10s %8s %8s %7zu\n",
                r.dataset.c_str(), r.model.c_str(), r.variant.c_str(),
                format_number(r.event_match_rate).substr(0, 8).c_str(),
                format_optional(r.c_median).substr(0, 8).c_str(),
                format_optional(r.mae_hours).substr(0, 10).c_str(),
                format_optional(r.aultc).substr(0, 8).c_str(),
                format_number(r.s_max_hours).c_str(), r.n_reports);
  }
  return 0;
}

int cmd_report_demographics(const std::string& manifest_path, bool all) {
  DemographicsSummary s =
      demographics_summary(read_manifest(manifest_path), !all);
  std::cout << "records " << s.n_records << "\n"
            << "male " << format_number(s.percent_male) << "%, female "
            << format_number(s.percent_female) << "% (of " << s.n_with_gender
            << " with gender)\n";
  if (s.n_with_age > 0) {
    std::cout << "age mean " << format_number(s.age_mean) << " (IQR "
              << format_number(s.age_q1) << "-" << format_number(s.age_q3)
              << "), median " << format_number(s.age_median) << ", range "
              << s.age_min << "-" << s.age_max << "\n";
  }
  return 0;
}

int cmd_report_review(const std::string& rankings_path,
                      const std::string& manual) {
  auto reports = parse_rankings_csv(read_file(rankings_path));
  auto stats = review_stats(reports, manual);
  std::cout << "annotator,mean_rank,top1,top1_llm,excellent,good_or_better,"
               "acceptable_or_better\n";
  for (const auto& [id, s] : stats) {
    std::cout << id << ',' << format_number(s.mean_rank) << ','
              << format_number(s.top1) << ',' << format_optional(s.top1_llm)
              << ',' << format_number(s.at_least.at(Quality::kExcellent)) << ','
              << format_number(s.at_least.at(Quality::kGood)) << ','
              << format_number(s.at_least.at(Quality::kAcceptable)) << '\n';
  }
  return 0;
}

int cmd_report_confusion(const std::vector<int>& cells) {
  ConfusionMatrix2x2 m{cells[0], cells[1], cells[2], cells[3]};
  Agreement a = confusion_agreement(m);
  std::cout << "total " << m.total() << ", agreement "
            << format_number(a.agreement) << ", accuracy "
            << format_number(a.accuracy_if_reference) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal evaluation of clinical finding extraction"};
  app.require_subcommand(1);
  std::function<int()> action;

  // filter
  auto* filter =
      app.add_subcommand("filter", "Screen a corpus into a manifest");
  std::string filter_input, filter_out = "manifest.jsonl";
  std::vector<std::string> screens{"case_report", "sepsis"};
  std::size_t workers = 1;
  filter->add_option("--input", filter_input, "Directory of .txt or .jsonl")
      ->required();
  filter->add_option("--out", filter_out, "Manifest path")
      ->capture_default_str();
  filter->add_option("--screens", screens, "Screens to apply")
      ->delimiter(',')
      ->capture_default_str();
  filter->add_option("--workers", workers, "Worker threads")
      ->capture_default_str();
  filter->callback([&] {
    action = [&] {
      return cmd_filter(filter_input, filter_out, screens, workers);
    };
  });

  // sample
  auto* sample = app.add_subcommand("sample", "Draw documents from a cohort");
  std::string sample_manifest, sample_out;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  sample->add_option("--manifest", sample_manifest)->required();
  sample->add_option("--n", sample_n)->required();
  sample->add_option("--seed", sample_seed)->capture_default_str();
  sample->add_option("--out", sample_out, "File; stdout when omitted");
  sample->callback([&] {
    action = [&] {
      return cmd_sample(sample_manifest, sample_n, sample_seed, sample_out);
    };
  });

  // phenotype
  auto* phenotype = app.add_subcommand("phenotype", "LLM sepsis phenotyping");
  std::string ph_manifest, ph_corpus, ph_out, ph_demographics;
  std::vector<std::string> ph_models;
  EndpointFlags ph_flags;
  phenotype->add_option("--manifest", ph_manifest)->required();
  phenotype->add_option("--corpus", ph_corpus)->required();
  phenotype->add_option("--models", ph_models)->delimiter(',')->required();
  phenotype->add_option("--demographics-model", ph_demographics,
                        "Model for case count, age and gender");
  phenotype->add_option("--out", ph_out,
                        "Updated manifest; in place if omitted");
  ph_flags.attach(phenotype);
  phenotype->callback([&] {
    action = [&] {
      return cmd_phenotype(ph_manifest, ph_corpus, ph_models, ph_demographics,
                           ph_out, ph_flags);
    };
  });

  // annotate
  auto* annotate = app.add_subcommand("annotate", "LLM finding extraction");
  std::string an_manifest, an_corpus, an_model, an_variant = "main",
                                                an_out = "annotations";
  std::optional<std::size_t> an_n;
  std::uint64_t an_seed = 0;
  EndpointFlags an_flags;
  annotate->add_option("--manifest", an_manifest)->required();
  annotate->add_option("--corpus", an_corpus)->required();
  annotate->add_option("--model", an_model)->required();
  annotate->add_option("--variant", an_variant)
      ->check(CLI::IsMember({"main", "norole", "zeroshot", "noexpand",
                             "interval", "intervaltype"}))
      ->capture_default_str();
  annotate->add_option("--out-dir", an_out)->capture_default_str();
  annotate->add_option("--n", an_n, "Sample size; all included if omitted");
  annotate->add_option("--seed", an_seed)->capture_default_str();
  an_flags.attach(annotate);
  annotate->callback([&] {
    action = [&] {
      return cmd_annotate(an_manifest, an_corpus, an_model, an_variant, an_out,
                          an_n, an_seed, an_flags);
    };
  });

  // align
  auto* align = app.add_subcommand("align", "Align two annotation files");
  std::string al_ref, al_pred, al_distance = "cosine", al_embedder = "fallback",
                               al_url;
  std::size_t al_dim = 256;
  double al_cutoff = 0.1;
  align->add_option("--ref", al_ref)->required();
  align->add_option("--pred", al_pred)->required();
  align->add_option("--distance", al_distance)
      ->check(
          CLI::IsMember({"cosine", "levenshtein", "levenshtein_normalized"}))
      ->capture_default_str();
  align->add_option("--embedder", al_embedder)
      ->check(CLI::IsMember({"fallback", "http"}))
      ->capture_default_str();
  align->add_option("--embed-url", al_url);
  align->add_option("--embed-dim", al_dim)->capture_default_str();
  align->add_option("--cutoff", al_cutoff)->capture_default_str();
  align->callback([&] {
    action = [&] {
      return cmd_align(al_ref, al_pred, al_distance, al_embedder, al_url,
                       al_dim, al_cutoff);
    };
  });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Run an evaluation config");
  std::string config_path;
  evaluate->add_option("--config", config_path, "INI run config")->required();
  evaluate->callback(
      [&] { action = [&] { return cmd_evaluate(config_path); }; });

  // report
  auto* report = app.add_subcommand("report", "Summary tables");
  report->require_subcommand(1);
  auto* rep_metrics = report->add_subcommand("metrics", "Collected metrics");
  std::string rep_root = "out";
  rep_metrics->add_option("--root", rep_root)->capture_default_str();
  rep_metrics->callback(
      [&] { action = [&] { return cmd_report_metrics(rep_root); }; });

  auto* rep_demo =
      report->add_subcommand("demographics", "Cohort demographics");
  std::string rep_manifest;
  bool rep_all = false;
  rep_demo->add_option("--manifest", rep_manifest)->required();
  rep_demo->add_flag("--all", rep_all, "Include records not in the cohort");
  rep_demo->callback([&] {
    action = [&] { return cmd_report_demographics(rep_manifest, rep_all); };
  });

  auto* rep_review =
      report->add_subcommand("review", "Annotation review ranks");
  std::string rep_rankings, rep_manual = "manual";
  rep_review
      ->add_option("--rankings", rep_rankings,
                   "CSV: doc_id,annotator_id,rank,quality")
      ->required();
  rep_review->add_option("--manual", rep_manual)->capture_default_str();
  rep_review->callback([&] {
    action = [&] { return cmd_report_review(rep_rankings, rep_manual); };
  });

  auto* rep_confusion =
      report->add_subcommand("confusion", "Phenotype agreement");
  std::vector<int> cells;
  rep_confusion->add_option("--cells", cells, "yes_yes,yes_no,no_yes,no_no")
      ->delimiter(',')
      ->expected(4)
      ->required();
  rep_confusion->callback(
      [&] { action = [&] { return cmd_report_confusion(cells); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    return action ? action() : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
