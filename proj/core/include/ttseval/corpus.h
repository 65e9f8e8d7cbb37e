#ifndef TTSEVAL_CORPUS_H_
#define TTSEVAL_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttseval/manifest.h"

namespace ttseval {

struct CorpusDocument {
  std::string doc_id;
  std::string raw;
  std::string body;
};

// Text strictly between the "==== Body" line and the next line starting
// with "==== " (or end of input), blank lines trimmed at both ends.
// Throws NoBodySection.
std::string extract_body(std::string_view raw);

// A conjunction of patterns, each pattern an alternation of literals matched
// case-insensitively anywhere in the text. The four corpus regexes are all
// literal alternations once the optional characters are expanded.
struct ScreenPattern {
  std::string source;                 // regex as published, for reporting
  std::vector<std::string> literals;  // lower-case alternatives
};

struct Screen {
  std::string name;
  std::vector<ScreenPattern> all_of;
};

// `case (report|presenta)` and `year-? ?old`.
const Screen& case_report_screen();
// `(sepsi|septic)` and `(critical|intensive) care`.
const Screen& sepsis_screen();
// Looks up "case_report" or "sepsis".
std::optional<Screen> screen_by_name(std::string_view name);

bool matches_pattern(std::string_view lowered_text, const ScreenPattern& p);
bool apply_screen(std::string_view text, const Screen& screen);

bool screen_case_report(std::string_view body);
bool screen_sepsis_candidate(std::string_view body);

// One unit pulled from a corpus source. A record that could not be decoded
// carries `error` instead of text.
struct RawDocument {
  std::string doc_id;
  std::string raw;
  std::optional<std::string> error;
};

class DocumentSource {
 public:
  virtual ~DocumentSource() = default;
  // nullopt at end of stream. Called from a single thread.
  virtual std::optional<RawDocument> next() = 0;
};

// `<doc_id>.txt` files anywhere below `root`, visited in sorted path order.
class DirectorySource : public DocumentSource {
 public:
  explicit DirectorySource(const std::filesystem::path& root);
  std::optional<RawDocument> next() override;

 private:
  std::vector<std::filesystem::path> paths_;
  std::size_t cursor_ = 0;
};

// Line-delimited archive: one {"doc_id": ..., "text": ...} object per line.
class JsonlSource : public DocumentSource {
 public:
  explicit JsonlSource(const std::filesystem::path& path);
  std::optional<RawDocument> next() override;

 private:
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

// Picks DirectorySource for directories, JsonlSource otherwise.
std::unique_ptr<DocumentSource> open_corpus(const std::filesystem::path& path);

struct FilterFailure {
  std::string doc_id;
  std::string reason;
};

struct FilterOptions {
  std::vector<Screen> screens{case_report_screen(), sepsis_screen()};
  std::size_t workers = 1;
  // Documents buffered between the reader and the workers.
  std::size_t queue_capacity = 4;
};

struct FilterResult {
  CohortManifest manifest;
  std::vector<FilterFailure> failures;
  std::size_t documents_seen = 0;
  std::size_t peak_in_flight = 0;
};

// Single pass over `source`. Per-document failures are recorded and never
// abort the stream. At most queue_capacity + workers + 1 documents are alive
// at once (the extra one is the reader's, waiting for queue space). Records
// come back sorted by doc_id.
FilterResult filter_corpus(DocumentSource& source,
                           const FilterOptions& options = {});

}  // namespace ttseval

#endif  // TTSEVAL_CORPUS_H_
