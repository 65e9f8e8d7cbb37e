#include "ttseval/corpus.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

bool is_blank(std::string_view line) { return trim(line).empty(); }

std::string_view rstrip(std::string_view s) {
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string extract_body(std::string_view raw) {
  auto lines = split_lines(raw);
  auto marker =
      std::find_if(lines.begin(), lines.end(),
                   [](std::string_view l) { return rstrip(l) == "==== Body"; });
  if (marker == lines.end()) throw NoBodySection("no '==== Body' section");
  std::size_t begin = static_cast<std::size_t>(marker - lines.begin()) + 1;
  std::size_t end = begin;
  while (end < lines.size() && !lines[end].starts_with("==== ")) ++end;
  while (begin < end && is_blank(lines[begin])) ++begin;
  while (end > begin && is_blank(lines[end - 1])) --end;

  std::string body;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) body += '\n';
    body += lines[i];
  }
  return body;
}

const Screen& case_report_screen() {
  static const Screen screen{
      "case_report",
      {{"case (report|presenta)", {"case report", "case presenta"}},
       {"year-? ?old", {"yearold", "year old", "year-old", "year- old"}}}};
  return screen;
}

const Screen& sepsis_screen() {
  static const Screen screen{
      "sepsis",
      {{"(sepsi|septic)", {"sepsi", "septic"}},
       {"(critical|intensive) care", {"critical care", "intensive care"}}}};
  return screen;
}

std::optional<Screen> screen_by_name(std::string_view name) {
  if (name == case_report_screen().name) return case_report_screen();
  if (name == sepsis_screen().name) return sepsis_screen();
  return std::nullopt;
}

bool matches_pattern(std::string_view lowered_text, const ScreenPattern& p) {
  return std::any_of(
      p.literals.begin(), p.literals.end(), [&](const std::string& literal) {
        return lowered_text.find(literal) != std::string_view::npos;
      });
}

bool apply_screen(std::string_view text, const Screen& screen) {
  std::string lowered = ascii_lower(text);
  return std::all_of(
      screen.all_of.begin(), screen.all_of.end(),
      [&](const ScreenPattern& p) { return matches_pattern(lowered, p); });
}

bool screen_case_report(std::string_view body) {
  return apply_screen(body, case_report_screen());
}

bool screen_sepsis_candidate(std::string_view body) {
  return apply_screen(body, sepsis_screen());
}

DirectorySource::DirectorySource(const std::filesystem::path& root) {
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      paths_.push_back(entry.path());
    }
  }
  std::sort(paths_.begin(), paths_.end());
}

std::optional<RawDocument> DirectorySource::next() {
  if (cursor_ >= paths_.size()) return std::nullopt;
  const auto& path = paths_[cursor_++];
  RawDocument doc;
  doc.doc_id = path.stem().string();
  try {
    doc.raw = read_file(path.string());
  } catch (const Error& e) {
    doc.error = e.what();
  }
  return doc;
}

JsonlSource::JsonlSource(const std::filesystem::path& path)
    : in_(path, std::ios::binary) {
  if (!in_) throw Error("cannot open corpus archive " + path.string());
}

std::optional<RawDocument> JsonlSource::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (trim(line).empty()) continue;
    RawDocument doc;
    try {
      auto j = nlohmann::json::parse(line);
      doc.doc_id = j.at("doc_id").get<std::string>();
      doc.raw = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      if (doc.doc_id.empty())
        doc.doc_id = "line:" + std::to_string(line_number_);
      doc.error = std::string("undecodable record: ") + e.what();
    }
    return doc;
  }
  return std::nullopt;
}

std::unique_ptr<DocumentSource> open_corpus(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    return std::make_unique<DirectorySource>(path);
  }
  return std::make_unique<JsonlSource>(path);
}

namespace {

struct Outcome {
  std::optional<ManifestRecord> record;
  std::optional<FilterFailure> failure;
};

Outcome process(RawDocument& doc, const FilterOptions& options) {
  if (doc.error) return {std::nullopt, FilterFailure{doc.doc_id, *doc.error}};
  if (doc.doc_id.empty()) {
    return {std::nullopt, FilterFailure{doc.doc_id, "empty doc_id"}};
  }
  if (!is_valid_utf8(doc.raw)) {
    return {std::nullopt, FilterFailure{doc.doc_id, "invalid UTF-8"}};
  }
  std::string body;
  try {
    body = extract_body(doc.raw);
  } catch (const NoBodySection& e) {
    return {std::nullopt, FilterFailure{doc.doc_id, e.what()}};
  }
  // Screens that were not requested do not exclude the document.
  ManifestRecord record;
  record.doc_id = doc.doc_id;
  record.is_case_report = true;
  record.is_sepsis_candidate = true;
  std::string lowered = ascii_lower(body);
  for (const Screen& screen : options.screens) {
    bool pass = std::all_of(
        screen.all_of.begin(), screen.all_of.end(),
        [&](const ScreenPattern& p) { return matches_pattern(lowered, p); });
    if (screen.name == case_report_screen().name) {
      record.is_case_report = pass;
    } else if (screen.name == sepsis_screen().name) {
      record.is_sepsis_candidate = pass;
    }
  }
  update_inclusion(record);
  return {std::move(record), std::nullopt};
}

}  // namespace

FilterResult filter_corpus(DocumentSource& source,
                           const FilterOptions& options) {
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  const std::size_t capacity = std::max<std::size_t>(1, options.queue_capacity);

  std::mutex mu;
  std::condition_variable not_full;
  std::condition_variable not_empty;
  std::deque<RawDocument> queue;
  bool done = false;

  std::mutex result_mu;
  FilterResult result;
  std::atomic<std::size_t> in_flight{0};
  std::atomic<std::size_t> peak{0};

  auto worker = [&] {
    while (true) {
      RawDocument doc;
      {
        std::unique_lock lock(mu);
        not_empty.wait(lock, [&] { return done || !queue.empty(); });
        if (queue.empty()) return;
        doc = std::move(queue.front());
        queue.pop_front();
      }
      not_full.notify_one();
      Outcome outcome = process(doc, options);
      doc = RawDocument{};
      in_flight.fetch_sub(1);
      std::lock_guard lock(result_mu);
      if (outcome.record) {
        result.manifest.records.push_back(std::move(*outcome.record));
      } else {
        result.failures.push_back(std::move(*outcome.failure));
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);

  std::size_t seen = 0;
  while (true) {
    std::optional<RawDocument> doc = source.next();
    if (!doc) break;
    ++seen;
    std::size_t now = in_flight.fetch_add(1) + 1;
    std::size_t prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::unique_lock lock(mu);
    not_full.wait(lock, [&] { return queue.size() < capacity; });
    queue.push_back(std::move(*doc));
    lock.unlock();
    not_empty.notify_one();
  }
  {
    std::lock_guard lock(mu);
    done = true;
  }
  not_empty.notify_all();
  pool.clear();

  result.documents_seen = seen;
  result.peak_in_flight = peak.load();
  std::sort(result.manifest.records.begin(), result.manifest.records.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return result;
}

}  // namespace ttseval
