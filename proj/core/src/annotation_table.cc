#include "ttseval/annotation_table.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

constexpr std::array<std::string_view, 7> kEventTypeNames = {
    "Factual", "Possible",   "Hypothetical", "Conditional",
    "Negated", "Historical", "Uncertain"};

constexpr std::array<std::string_view, 6> kVariantTokens = {
    "main", "norole", "zeroshot", "noexpand", "interval", "intervaltype"};

bool is_fence(std::string_view line) { return line.starts_with("```"); }

// "|---|:--|" style separator rows from markdown tables.
bool is_markdown_rule(std::string_view line) {
  bool has_dash = false;
  for (char c : line) {
    if (c == '-') {
      has_dash = true;
    } else if (c != '|' && c != ':' && c != ' ' && c != '\t') {
      return false;
    }
  }
  return has_dash;
}

std::string_view strip_outer_pipes(std::string_view line) {
  if (line.size() >= 2 && line.front() == '|' && line.back() == '|') {
    return trim(line.substr(1, line.size() - 2));
  }
  return line;
}

bool is_header(const std::vector<std::string>& cells) {
  return cells.size() >= 2 && !parse_decimal(cells[1]).has_value() &&
         contains_ci(cells[0], "event");
}

}  // namespace

std::string_view event_type_name(EventType type) {
  return kEventTypeNames.at(static_cast<std::size_t>(type));
}

std::optional<EventType> event_type_from_name(std::string_view name) {
  std::string wanted = ascii_lower(trim(name));
  for (std::size_t i = 0; i < kEventTypeNames.size(); ++i) {
    if (ascii_lower(kEventTypeNames[i]) == wanted) {
      return static_cast<EventType>(i);
    }
  }
  return std::nullopt;
}

std::size_t column_count(PromptVariant variant) {
  switch (variant) {
    case PromptVariant::kInterval:
      return 3;
    case PromptVariant::kIntervalType:
      return 4;
    default:
      return 2;
  }
}

std::string_view variant_token(PromptVariant variant) {
  return kVariantTokens.at(static_cast<std::size_t>(variant));
}

std::optional<PromptVariant> variant_from_token(std::string_view token) {
  for (std::size_t i = 0; i < kVariantTokens.size(); ++i) {
    if (kVariantTokens[i] == token) return static_cast<PromptVariant>(i);
  }
  return std::nullopt;
}

std::optional<double> parse_decimal(std::string_view text) {
  text = trim(text);
  std::string cleaned;
  cleaned.reserve(text.size());
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') cleaned.push_back('-');
    ++i;
  }
  std::size_t int_digits = 0;
  bool last_was_comma = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      cleaned.push_back(c);
      ++int_digits;
      last_was_comma = false;
    } else if (c == ',' && int_digits > 0 && !last_was_comma) {
      last_was_comma = true;
    } else {
      break;
    }
  }
  if (int_digits == 0 || last_was_comma) return std::nullopt;
  if (i < text.size() && text[i] == '.') {
    cleaned.push_back('.');
    ++i;
    std::size_t frac_digits = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      cleaned.push_back(text[i]);
      ++frac_digits;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;

  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), value);
  if (ec != std::errc() || ptr != cleaned.data() + cleaned.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_hours(double hours) {
  if (hours == 0.0) return "0";
  std::array<char, 512> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                 hours, std::chars_format::fixed);
  if (ec != std::errc()) throw Error("cannot format time value");
  return std::string(buffer.data(), ptr);
}

TableScan scan_bar_table(std::string_view raw, std::size_t arity) {
  TableScan scan;
  auto lines = split_lines(raw);
  scan.total_lines = lines.size();
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::size_t line_number = n + 1;
    std::string_view line = trim(lines[n]);
    if (line.empty() || is_fence(line) || is_markdown_rule(line)) {
      ++scan.skipped_lines;
      continue;
    }
    std::vector<std::string> cells;
    for (std::string_view cell : split(strip_outer_pipes(line), '|')) {
      cells.emplace_back(trim(cell));
    }
    if (is_header(cells)) {
      ++scan.skipped_lines;
      continue;
    }
    if (cells.size() != arity) {
      scan.warnings.push_back(
          {line_number, "expected " + std::to_string(arity) +
                            " columns, found " + std::to_string(cells.size())});
      continue;
    }
    scan.rows.push_back({line_number, std::move(cells)});
  }
  return scan;
}

Annotation parse_annotation_table(std::string_view raw, PromptVariant variant,
                                  std::string doc_id,
                                  std::string annotator_id) {
  if (doc_id.empty()) throw PreconditionError("doc_id must be non-empty");
  Annotation annotation;
  annotation.doc_id = std::move(doc_id);
  annotation.annotator_id = std::move(annotator_id);
  annotation.variant = variant;

  TableScan scan = scan_bar_table(raw, column_count(variant));
  annotation.parse_warnings = std::move(scan.warnings);

  for (TableRow& row : scan.rows) {
    auto warn = [&](std::string reason) {
      annotation.parse_warnings.push_back({row.line_number, std::move(reason)});
    };
    if (row.cells[0].empty()) {
      warn("empty finding text");
      continue;
    }
    std::optional<double> start = parse_decimal(row.cells[1]);
    if (!start) {
      warn("non-numeric timestamp '" + row.cells[1] + "'");
      continue;
    }
    Finding finding{row.cells[0], *start, std::nullopt, std::nullopt};
    if (row.cells.size() >= 3) {
      std::optional<double> end = parse_decimal(row.cells[2]);
      if (!end) {
        warn("non-numeric interval end '" + row.cells[2] + "'");
        continue;
      }
      if (*end < *start) {
        warn("interval end precedes start");
        continue;
      }
      finding.interval_end_hours = end;
    }
    if (row.cells.size() >= 4) {
      std::optional<EventType> type = event_type_from_name(row.cells[3]);
      if (!type) {
        warn("unknown event type '" + row.cells[3] + "'");
        continue;
      }
      finding.event_type = type;
    }
    annotation.findings.push_back(std::move(finding));
  }

  // Warnings were appended in two passes; keep them in line order.
  std::stable_sort(annotation.parse_warnings.begin(),
                   annotation.parse_warnings.end(),
                   [](const ParseWarning& a, const ParseWarning& b) {
                     return a.line_number < b.line_number;
                   });

  if (annotation.findings.empty()) {
    throw EmptyAnnotation("no well-formed rows in annotation for " +
                          annotation.doc_id);
  }
  return annotation;
}

std::string serialize_annotation(const Annotation& annotation) {
  std::string out;
  for (const Finding& f : annotation.findings) {
    if (!out.empty()) out += '\n';
    out += f.text;
    out += " | ";
    out += format_hours(f.time_hours);
    if (f.interval_end_hours) {
      out += " | ";
      out += format_hours(*f.interval_end_hours);
    }
    if (f.event_type) {
      out += " | ";
      out += event_type_name(*f.event_type);
    }
  }
  return out;
}

std::string annotation_file_name(const AnnotationFileName& name) {
  return name.doc_id + "." + name.annotator_id + "." +
         std::string(variant_token(name.variant)) + ".bsv";
}

std::optional<AnnotationFileName> parse_annotation_file_name(
    std::string_view file_name) {
  if (!file_name.ends_with(".bsv")) return std::nullopt;
  file_name.remove_suffix(4);
  std::size_t first_dot = file_name.find('.');
  std::size_t last_dot = file_name.rfind('.');
  if (first_dot == std::string_view::npos || first_dot == last_dot ||
      first_dot == 0) {
    return std::nullopt;
  }
  auto variant = variant_from_token(file_name.substr(last_dot + 1));
  std::string_view annotator =
      file_name.substr(first_dot + 1, last_dot - first_dot - 1);
  if (!variant || annotator.empty()) return std::nullopt;
  return AnnotationFileName{std::string(file_name.substr(0, first_dot)),
                            std::string(annotator), *variant};
}

Annotation read_annotation_file(const std::filesystem::path& path) {
  auto name = parse_annotation_file_name(path.filename().string());
  if (!name) {
    throw PreconditionError(
        "annotation file name does not follow "
        "<doc_id>.<annotator_id>.<variant>.bsv: " +
        path.string());
  }
  return parse_annotation_table(read_file(path.string()), name->variant,
                                name->doc_id, name->annotator_id);
}

void write_annotation_file(const std::filesystem::path& directory,
                           const Annotation& annotation) {
  std::filesystem::create_directories(directory);
  auto path = directory /
              annotation_file_name({annotation.doc_id, annotation.annotator_id,
                                    annotation.variant});
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_annotation(annotation) << '\n';
}

}  // namespace ttseval
