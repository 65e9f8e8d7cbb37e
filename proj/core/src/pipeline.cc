#include "ttseval/pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "ttseval/annotation_table.h"
#include "ttseval/error_analysis.h"
#include "ttseval/errors.h"
#include "ttseval/llm_parsers.h"
#include "ttseval/prompts.h"
#include "ttseval/sampling.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string tsv_field(std::string_view value) {
  std::string out(value);
  std::replace_if(
      out.begin(), out.end(),
      [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

ordered_json optional_json(const std::optional<double>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::optional<double> json_optional(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::optional<double> aggregate(std::vector<double> values,
                                Aggregation aggregation) {
  if (values.empty()) return std::nullopt;
  if (aggregation == Aggregation::kPerReportMean) {
    return mean_sd(values).mean;
  }
  return median(std::move(values));
}

template <typename Fn>
std::optional<double> defined_or_empty(Fn fn) {
  try {
    return fn();
  } catch (const UndefinedMetric&) {
    return std::nullopt;
  }
}

// --- annotation discovery --------------------------------------------------

struct AnnotationFile {
  AnnotationFileName name;
  fs::path path;
};

std::vector<AnnotationFile> list_annotation_files(const fs::path& dir) {
  std::vector<AnnotationFile> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto name = parse_annotation_file_name(entry.path().filename().string());
    if (name) files.push_back({*name, entry.path()});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.path.filename() < b.path.filename();
  });
  return files;
}

using GroupKey = std::pair<std::string, PromptVariant>;  // (model, variant)

struct Group {
  std::string model;
  PromptVariant variant;
  std::map<std::string, fs::path> files;  // doc_id -> path
};

std::vector<std::string> select_documents(
    const RunConfig& config, const std::map<std::string, fs::path>& refs) {
  std::vector<std::string> docs;
  if (!config.manifest) {
    for (const auto& [doc, path] : refs) docs.push_back(doc);
    return docs;
  }
  CohortManifest manifest = read_manifest(*config.manifest);
  if (config.sample_size) {
    return sample_cohort(manifest, *config.sample_size, config.seed);
  }
  for (const auto& r : manifest.records) {
    if (r.included) docs.push_back(r.doc_id);
  }
  std::sort(docs.begin(), docs.end());
  return docs;
}

// --- per-document evaluation -----------------------------------------------

struct DocOutcome {
  std::optional<Annotation> ref;
  std::optional<Annotation> pred;
  AlignmentResult alignment;
  std::vector<MatchedPair> matched;
  ReportMetrics metrics;
  std::optional<std::string> error;
};

ReportMetrics report_metrics(const std::string& doc_id,
                             const AlignmentResult& alignment,
                             const std::vector<MatchedPair>& matched,
                             const MetricConfig& mc) {
  ReportMetrics m;
  m.doc_id = doc_id;
  m.n_ref = alignment.n_ref;
  m.n_pred = alignment.n_pred;
  m.n_pairs = alignment.pairs.size();
  m.n_matched = matched.size();
  m.match_rate = event_match_rate(alignment, mc.cosine_cutoff);
  m.adjusted_match_rate = defined_or_empty(
      [&] { return adjusted_match_rate(alignment, mc.cosine_cutoff); });
  m.c_index = defined_or_empty([&] { return concordance(matched); });
  m.c_index_iqr = defined_or_empty([&] {
    auto filtered = iqr_filter(matched);
    return concordance(filtered.pairs);
  });
  if (!matched.empty()) {
    m.mae_hours = median_abs_error(matched);
    m.aultc = aultc(DiscrepancySeries::from_pairs(matched, mc.s_max_hours),
                    mc.aultc_weighting);
  }
  return m;
}

DocOutcome evaluate_document(const std::string& doc_id,
                             const fs::path& ref_path,
                             const fs::path& pred_path,
                             const DistanceSpec& spec, const MetricConfig& mc) {
  DocOutcome out;
  try {
    out.ref = read_annotation_file(ref_path);
    out.pred = read_annotation_file(pred_path);
    out.alignment = best_match(*out.ref, *out.pred, spec);
    for (const auto& p : out.alignment.pairs) {
      if (p.distance <= mc.cosine_cutoff) out.matched.push_back(p);
    }
    out.metrics = report_metrics(doc_id, out.alignment, out.matched, mc);
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

std::string alignment_tsv(const DocOutcome& d, const MetricConfig& mc) {
  std::ostringstream out;
  out << "ref_index\tpred_index\tref_text\tpred_text\tdistance\tt_ref\t"
         "t_pred\tmatched\n";
  const auto& ref = d.ref->findings;
  const auto& pred = d.pred->findings;
  for (const auto& p : d.alignment.pairs) {
    out << p.ref_index << '\t' << p.pred_index << '\t'
        << tsv_field(ref[p.ref_index].text) << '\t'
        << tsv_field(pred[p.pred_index].text) << '\t'
        << format_number(p.distance) << '\t' << format_number(p.t_ref) << '\t'
        << format_number(p.t_pred) << '\t'
        << (p.distance <= mc.cosine_cutoff ? 1 : 0) << '\n';
  }
  for (std::size_t r : d.alignment.unmatched_ref) {
    out << r << "\t\t" << tsv_field(ref[r].text) << "\t\tNA\t"
        << format_number(ref[r].time_hours) << "\tNA\t0\n";
  }
  for (std::size_t p : d.alignment.unmatched_pred) {
    out << "\t" << p << "\t\t" << tsv_field(pred[p].text) << "\tNA\tNA\t"
        << format_number(pred[p].time_hours) << "\t0\n";
  }
  return out.str();
}

std::string cdf_csv(const std::vector<CdfPoint>& points) {
  std::string out = "x,F\n";
  for (const auto& p : points) {
    out += format_number(p.x) + "," + format_number(p.f) + "\n";
  }
  return out;
}

std::string bucket_file_name(const std::string& label) {
  std::string name = "bucket_";
  for (char c : label) name += (c == '+') ? 'p' : c;
  return name + ".csv";
}

std::string per_report_csv(const std::vector<ReportMetrics>& reports,
                           const MetricsRecord& record) {
  std::ostringstream out;
  out << "doc_id,n_ref,n_pred,n_pairs,n_matched,match_rate,"
         "adjusted_match_rate,c_index,c_index_iqr,mae_hours,aultc,"
         "s_max_hours,time_unit,seed,config_hash\n";
  for (const auto& m : reports) {
    out << csv_field(m.doc_id) << ',' << m.n_ref << ',' << m.n_pred << ','
        << m.n_pairs << ',' << m.n_matched << ',' << format_number(m.match_rate)
        << ',' << format_optional(m.adjusted_match_rate) << ','
        << format_optional(m.c_index) << ',' << format_optional(m.c_index_iqr)
        << ',' << format_optional(m.mae_hours) << ','
        << format_optional(m.aultc) << ',' << format_number(record.s_max_hours)
        << ',' << record.time_unit << ',' << record.seed << ','
        << record.config_hash << '\n';
  }
  return out.str();
}

std::string curve_csv(const std::vector<std::pair<double, double>>& curve,
                      const MetricsRecord& record) {
  std::string out = "threshold,match_rate,distance\n";
  for (const auto& [threshold, rate] : curve) {
    out += format_number(threshold) + "," + format_number(rate) + "," +
           record.distance + "\n";
  }
  return out;
}

}  // namespace

// --- formatting ------------------------------------------------------------

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : "NA";
}

std::vector<double> curve_thresholds(DistanceKind kind) {
  std::vector<double> thresholds;
  if (kind == DistanceKind::kLevenshtein) {
    for (int i = 0; i <= 50; ++i) thresholds.push_back(i);
  } else {
    for (int i = 0; i <= 100; ++i) thresholds.push_back(i / 100.0);
  }
  return thresholds;
}

std::string metrics_csv_header() {
  return "dataset,model,variant,event_match_rate,event_match_rate_mean,"
         "adjusted_match_rate,c_median,c_aggregate,c_iqr_aggregate,mae_hours,"
         "aultc,s_max_hours,time_unit,aggregation,n_reports,n_ref_events,"
         "n_pred_events,n_pairs,n_matched,n_under_identified,"
         "n_over_identified,seed,config_hash,distance";
}

std::string metrics_csv_row(const MetricsRecord& r) {
  std::ostringstream out;
  out << csv_field(r.dataset) << ',' << csv_field(r.model) << ','
      << csv_field(r.variant) << ',' << format_number(r.event_match_rate) << ','
      << format_number(r.event_match_rate_mean) << ','
      << format_optional(r.adjusted_match_rate) << ','
      << format_optional(r.c_median) << ',' << format_optional(r.c_aggregate)
      << ',' << format_optional(r.c_iqr_aggregate) << ','
      << format_optional(r.mae_hours) << ',' << format_optional(r.aultc) << ','
      << format_number(r.s_max_hours) << ',' << r.time_unit << ','
      << r.aggregation << ',' << r.n_reports << ',' << r.n_ref_events << ','
      << r.n_pred_events << ',' << r.n_pairs << ',' << r.n_matched << ','
      << r.n_under_identified << ',' << r.n_over_identified << ',' << r.seed
      << ',' << r.config_hash << ',' << r.distance;
  return out.str();
}

std::string metrics_to_json(const MetricsRecord& r) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["model"] = r.model;
  j["variant"] = r.variant;
  j["event_match_rate"] = r.event_match_rate;
  j["event_match_rate_mean"] = r.event_match_rate_mean;
  j["adjusted_match_rate"] = optional_json(r.adjusted_match_rate);
  j["c_median"] = optional_json(r.c_median);
  j["c_aggregate"] = optional_json(r.c_aggregate);
  j["c_iqr_aggregate"] = optional_json(r.c_iqr_aggregate);
  j["mae_hours"] = optional_json(r.mae_hours);
  j["aultc"] = optional_json(r.aultc);
  j["s_max_hours"] = r.s_max_hours;
  j["time_unit"] = r.time_unit;
  j["aggregation"] = r.aggregation;
  j["n_reports"] = r.n_reports;
  j["n_ref_events"] = r.n_ref_events;
  j["n_pred_events"] = r.n_pred_events;
  j["n_pairs"] = r.n_pairs;
  j["n_matched"] = r.n_matched;
  j["n_under_identified"] = r.n_under_identified;
  j["n_over_identified"] = r.n_over_identified;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["distance"] = r.distance;
  return j.dump(2) + "\n";
}

MetricsRecord metrics_from_json(const std::string& text) {
  try {
    auto j = ordered_json::parse(text);
    MetricsRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.event_match_rate = j.at("event_match_rate").get<double>();
    r.event_match_rate_mean = j.at("event_match_rate_mean").get<double>();
    r.adjusted_match_rate = json_optional(j, "adjusted_match_rate");
    r.c_median = json_optional(j, "c_median");
    r.c_aggregate = json_optional(j, "c_aggregate");
    r.c_iqr_aggregate = json_optional(j, "c_iqr_aggregate");
    r.mae_hours = json_optional(j, "mae_hours");
    r.aultc = json_optional(j, "aultc");
    r.s_max_hours = j.at("s_max_hours").get<double>();
    r.time_unit = j.at("time_unit").get<std::string>();
    r.aggregation = j.at("aggregation").get<std::string>();
    r.n_reports = j.at("n_reports").get<std::size_t>();
    r.n_ref_events = j.at("n_ref_events").get<std::size_t>();
    r.n_pred_events = j.at("n_pred_events").get<std::size_t>();
    r.n_pairs = j.at("n_pairs").get<std::size_t>();
    r.n_matched = j.at("n_matched").get<std::size_t>();
    r.n_under_identified = j.at("n_under_identified").get<std::size_t>();
    r.n_over_identified = j.at("n_over_identified").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.distance = j.at("distance").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("bad metrics record: ") + e.what());
  }
}

std::vector<MetricsRecord> collect_metrics(const fs::path& root) {
  std::vector<MetricsRecord> records;
  if (!fs::is_directory(root)) {
    throw PreconditionError("not a directory: " + root.string());
  }
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() == "metrics.json") {
      records.push_back(metrics_from_json(read_file(entry.path().string())));
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.dataset, a.model, a.variant) <
           std::tie(b.dataset, b.model, b.variant);
  });
  return records;
}

// --- stages ----------------------------------------------------------------

std::map<std::string, std::string> load_bodies(
    DocumentSource& source, const std::vector<std::string>& doc_ids) {
  std::set<std::string> wanted(doc_ids.begin(), doc_ids.end());
  std::map<std::string, std::string> bodies;
  while (auto doc = source.next()) {
    if (doc->error || !wanted.count(doc->doc_id)) continue;
    try {
      bodies[doc->doc_id] = extract_body(doc->raw);
    } catch (const NoBodySection&) {
    }
  }
  return bodies;
}

std::vector<StageFailure> run_phenotype_stage(
    CohortManifest& manifest, const std::map<std::string, std::string>& bodies,
    ChatClient& client, const PhenotypeOptions& options) {
  std::vector<StageFailure> failures;
  std::vector<ChatRequest> requests;
  // (record index, model or empty for the demographics query)
  std::vector<std::pair<std::size_t, std::string>> slots;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const auto& r = manifest.records[i];
    if (!r.is_case_report || !r.is_sepsis_candidate) continue;
    auto body = bodies.find(r.doc_id);
    if (body == bodies.end()) {
      failures.push_back({r.doc_id, "phenotype", "document body not found"});
      continue;
    }
    for (const auto& model : options.models) {
      ChatRequest request = build_phenotype_prompt(body->second);
      request.model_id = model;
      requests.push_back(std::move(request));
      slots.emplace_back(i, model);
    }
    if (!options.demographics_model.empty()) {
      ChatRequest request = build_demographics_prompt(body->second);
      request.model_id = options.demographics_model;
      requests.push_back(std::move(request));
      slots.emplace_back(i, "");
    }
  }

  auto outcomes = dispatch_requests(client, requests, options.dispatch);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto& record = manifest.records[slots[k].first];
    const std::string& model = slots[k].second;
    const std::string stage = model.empty() ? "demographics" : "phenotype";
    if (!outcomes[k].response) {
      failures.push_back({record.doc_id, stage, outcomes[k].error});
      continue;
    }
    try {
      if (model.empty()) {
        Demographics d = parse_demographics_response(*outcomes[k].response);
        record.n_cases = d.n_cases;
        record.age = d.age;
        record.gender = d.gender;
      } else {
        record.phenotypes[model] = parse_boxed_binary(*outcomes[k].response);
      }
    } catch (const Error& e) {
      failures.push_back({record.doc_id, stage, e.what()});
    }
  }
  for (auto& r : manifest.records) update_inclusion(r);
  std::sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) {
    return std::tie(a.doc_id, a.stage) < std::tie(b.doc_id, b.stage);
  });
  return failures;
}

std::vector<StageFailure> run_annotate_stage(
    const std::map<std::string, std::string>& bodies, ChatClient& client,
    const AnnotateOptions& options) {
  std::vector<ChatRequest> requests;
  std::vector<std::string> doc_ids;
  for (const auto& [doc_id, body] : bodies) {
    ChatRequest request = build_annotation_prompt(body, options.variant);
    request.model_id = options.model;
    requests.push_back(std::move(request));
    doc_ids.push_back(doc_id);
  }
  auto outcomes = dispatch_requests(client, requests, options.dispatch);
  std::vector<StageFailure> failures;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k].response) {
      failures.push_back({doc_ids[k], "annotate", outcomes[k].error});
      continue;
    }
    try {
      Annotation a = parse_annotation_table(
          *outcomes[k].response, options.variant, doc_ids[k], options.model);
      write_annotation_file(options.output_dir, a);
    } catch (const Error& e) {
      failures.push_back({doc_ids[k], "annotate", e.what()});
    }
  }
  return failures;
}

// --- evaluation ------------------------------------------------------------

EvaluationSummary run_evaluation(const RunConfig& config) {
  std::shared_ptr<Embedder> embedder;
  if (config.distance == DistanceKind::kEmbeddingCosine) {
    if (config.embedder == EmbedderKind::kHttp) {
      embedder = std::make_shared<HttpEmbedder>(config.embed_url);
    } else {
      embedder = std::make_shared<FallbackEmbedder>(config.embed_dim);
    }
  }
  return run_evaluation(config, std::move(embedder));
}

EvaluationSummary run_evaluation(const RunConfig& config,
                                 std::shared_ptr<Embedder> embedder) {
  validate_run_config(config);
  if (config.distance == DistanceKind::kEmbeddingCosine && !embedder) {
    throw ConfigError("cosine distance requires an embedder");
  }
  const MetricConfig& mc = config.metrics;
  const std::string hash = config_hash(config);
  DistanceSpec spec{config.distance, embedder};

  // Reference annotations: one per document, main variant preferred.
  std::map<std::string, fs::path> refs;
  std::map<std::string, PromptVariant> ref_variant;
  for (const auto& f : list_annotation_files(config.reference_dir)) {
    if (f.name.annotator_id != config.reference_annotator) continue;
    auto it = ref_variant.find(f.name.doc_id);
    if (it == ref_variant.end() || (f.name.variant == PromptVariant::kMain &&
                                    it->second != PromptVariant::kMain)) {
      refs[f.name.doc_id] = f.path;
      ref_variant[f.name.doc_id] = f.name.variant;
    }
  }
  std::map<GroupKey, Group> groups;
  for (const auto& f : list_annotation_files(config.predicted_dir)) {
    if (f.name.annotator_id == config.reference_annotator) continue;
    GroupKey key{f.name.annotator_id, f.name.variant};
    auto& g = groups[key];
    g.model = f.name.annotator_id;
    g.variant = f.name.variant;
    g.files[f.name.doc_id] = f.path;
  }
  if (groups.empty()) {
    throw ConfigError("no predicted annotations in " +
                      config.predicted_dir.string());
  }
  std::vector<std::string> docs;
  try {
    docs = select_documents(config, refs);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }

  EvaluationSummary summary;
  std::set<std::string> evaluated_docs;
  const fs::path final_root = config.output_dir / config.dataset;
  const fs::path root = config.output_dir / (config.dataset + ".partial");
  fs::remove_all(root);
  fs::create_directories(root);

  for (const auto& [key, group] : groups) {
    const std::string variant(variant_token(group.variant));
    const std::string stage = "evaluate:" + group.model + "/" + variant;
    const fs::path dir = root / group.model / variant;

    std::vector<DocOutcome> outcomes(docs.size());
    parallel_for(docs.size(), config.threads, [&](std::size_t i) {
      const std::string& doc = docs[i];
      auto ref = refs.find(doc);
      auto pred = group.files.find(doc);
      if (ref == refs.end()) {
        outcomes[i].error = "missing reference annotation";
      } else if (pred == group.files.end()) {
        outcomes[i].error = "missing predicted annotation";
      } else {
        outcomes[i] =
            evaluate_document(doc, ref->second, pred->second, spec, mc);
      }
    });

    MetricsRecord record;
    record.dataset = config.dataset;
    record.model = group.model;
    record.variant = variant;
    record.s_max_hours = mc.s_max_hours;
    record.time_unit = MetricConfig::kTimeUnit;
    record.aggregation = aggregation_token(mc.aggregation);
    record.seed = config.seed;
    record.config_hash = hash;
    record.distance = distance_token(config.distance);

    std::vector<ReportMetrics> reports;
    std::vector<MatchedPair> pooled;
    std::vector<double> rates, c_values, c_iqr_values;
    std::vector<std::size_t> curve_counts;
    const auto thresholds = curve_thresholds(config.distance);
    curve_counts.assign(thresholds.size(), 0);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocOutcome& d = outcomes[i];
      if (d.error) {
        summary.failures.push_back({docs[i], stage, *d.error});
        continue;
      }
      evaluated_docs.insert(docs[i]);
      write_text(dir / "alignments" / (docs[i] + ".tsv"), alignment_tsv(d, mc));
      const ReportMetrics& m = d.metrics;
      reports.push_back(m);
      ++record.n_reports;
      record.n_ref_events += m.n_ref;
      record.n_pred_events += m.n_pred;
      record.n_pairs += m.n_pairs;
      record.n_matched += m.n_matched;
      auto counts = identification_counts(d.alignment);
      record.n_under_identified += counts.under_identified;
      record.n_over_identified += counts.over_identified;
      rates.push_back(m.match_rate);
      if (m.c_index) c_values.push_back(*m.c_index);
      if (m.c_index_iqr) c_iqr_values.push_back(*m.c_index_iqr);
      pooled.insert(pooled.end(), d.matched.begin(), d.matched.end());
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        for (const auto& p : d.alignment.pairs) {
          if (p.distance <= thresholds[t]) ++curve_counts[t];
        }
      }
    }
    if (record.n_reports == 0) continue;

    record.event_match_rate =
        record.n_ref_events == 0
            ? 0.0
            : static_cast<double>(record.n_matched) / record.n_ref_events;
    record.event_match_rate_mean = mean_sd(rates).mean;
    if (record.n_pairs > 0) {
      record.adjusted_match_rate =
          static_cast<double>(record.n_matched) / record.n_pairs;
    }
    record.c_median = aggregate(c_values, Aggregation::kPerReportMedian);
    if (mc.aggregation == Aggregation::kPooled) {
      record.c_aggregate =
          defined_or_empty([&] { return concordance(pooled); });
      record.c_iqr_aggregate = defined_or_empty(
          [&] { return concordance(iqr_filter(pooled).pairs); });
    } else {
      record.c_aggregate = aggregate(c_values, mc.aggregation);
      record.c_iqr_aggregate = aggregate(c_iqr_values, mc.aggregation);
    }

    if (!pooled.empty()) {
      record.mae_hours = median_abs_error(pooled);
      auto series = DiscrepancySeries::from_pairs(pooled, mc.s_max_hours);
      record.aultc = aultc(series, mc.aultc_weighting);
      write_text(dir / "cdf" / "pooled.csv", cdf_csv(log_time_cdf(series)));
      for (const auto& bucket : bucketed_discrepancy_cdfs(pooled, mc)) {
        write_text(dir / "cdf" / bucket_file_name(bucket.label),
                   cdf_csv(bucket.points));
      }
    }

    std::vector<std::pair<double, double>> curve;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      double rate =
          record.n_ref_events == 0
              ? 0.0
              : static_cast<double>(curve_counts[t]) / record.n_ref_events;
      curve.emplace_back(thresholds[t], rate);
    }

    write_text(dir / "per_report.csv", per_report_csv(reports, record));
    write_text(dir / "match_rate_curve.csv", curve_csv(curve, record));
    write_text(dir / "metrics.csv",
               metrics_csv_header() + "\n" + metrics_csv_row(record) + "\n");
    write_text(dir / "metrics.json", metrics_to_json(record));
    summary.records.push_back(std::move(record));
  }

  std::sort(summary.failures.begin(), summary.failures.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.stage, a.doc_id) < std::tie(b.stage, b.doc_id);
            });
  summary.documents_evaluated = evaluated_docs.size();

  std::string summary_csv = metrics_csv_header() + "\n";
  for (const auto& r : summary.records)
    summary_csv += metrics_csv_row(r) + "\n";
  write_text(root / "summary.csv", summary_csv);

  std::string failures_csv = "doc_id,stage,reason,seed,config_hash\n";
  for (const auto& f : summary.failures) {
    failures_csv += csv_field(f.doc_id) + "," + csv_field(f.stage) + "," +
                    csv_field(f.reason) + "," + std::to_string(config.seed) +
                    "," + hash + "\n";
  }
  write_text(root / "failures.csv", failures_csv);

  ordered_json run;
  run["dataset"] = config.dataset;
  run["config_hash"] = hash;
  run["seed"] = config.seed;
  run["sampling_algorithm"] = kSamplingAlgorithm;
  run["s_max_hours"] = mc.s_max_hours;
  run["time_unit"] = MetricConfig::kTimeUnit;
  run["aggregation"] = aggregation_token(mc.aggregation);
  run["cutoff"] = mc.cosine_cutoff;
  run["aultc_weighting"] =
      mc.aultc_weighting == AultcWeighting::kExactArea ? "exact" : "displayed";
  run["distance"] = distance_token(config.distance);
  run["embedder"] = embedder ? ordered_json(embedder->id()) : nullptr;
  run["reference_annotator"] = config.reference_annotator;
  run["documents"] = docs;
  run["documents_evaluated"] = summary.documents_evaluated;
  run["failures"] = summary.failures.size();
  ordered_json groups_json = ordered_json::array();
  for (const auto& r : summary.records) {
    groups_json.push_back(r.model + "/" + r.variant);
  }
  run["evaluated"] = groups_json;
  write_text(root / "run.json", run.dump(2) + "\n");

  fs::remove_all(final_root);
  fs::rename(root, final_root);

  if (summary.documents_evaluated == 0) {
    throw Error("no document could be evaluated; see " +
                (final_root / "failures.csv").string());
  }
  return summary;
}

}  // namespace ttseval
