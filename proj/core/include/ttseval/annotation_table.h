#ifndef TTSEVAL_ANNOTATION_TABLE_H_
#define TTSEVAL_ANNOTATION_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttseval/finding.h"

namespace ttseval {

// Parses a signed decimal: optional sign, digits (thousands commas allowed),
// optional fractional part. Ranges, words and exponents are rejected.
std::optional<double> parse_decimal(std::string_view text);

// Shortest decimal that reads back to exactly `hours`; integers carry no
// fraction ("-72", "24.5").
std::string format_hours(double hours);

// Line-oriented scan of a bar-separated table shared by every table-shaped
// LLM reply. Fences, blank lines, markdown rule rows and header rows are
// skipped; rows with the wrong arity become warnings.
struct TableRow {
  std::size_t line_number = 0;     // 1-based
  std::vector<std::string> cells;  // trimmed
};

struct TableScan {
  std::vector<TableRow> rows;
  std::vector<ParseWarning> warnings;
  std::size_t skipped_lines = 0;
  std::size_t total_lines = 0;
};

TableScan scan_bar_table(std::string_view raw, std::size_t arity);

// Throws EmptyAnnotation when no well-formed row survives.
Annotation parse_annotation_table(std::string_view raw, PromptVariant variant,
                                  std::string doc_id, std::string annotator_id);

// One row per finding, columns joined by " | ", rows joined by newlines.
std::string serialize_annotation(const Annotation& annotation);

// `<doc_id>.<annotator_id>.<variant>.bsv`. The doc id ends at the first dot,
// so annotator ids may contain dots ("llama-3.3-70b").
struct AnnotationFileName {
  std::string doc_id;
  std::string annotator_id;
  PromptVariant variant = PromptVariant::kMain;
};

std::string annotation_file_name(const AnnotationFileName& name);
std::optional<AnnotationFileName> parse_annotation_file_name(
    std::string_view file_name);

Annotation read_annotation_file(const std::filesystem::path& path);
void write_annotation_file(const std::filesystem::path& directory,
                           const Annotation& annotation);

}  // namespace ttseval

#endif  // TTSEVAL_ANNOTATION_TABLE_H_
