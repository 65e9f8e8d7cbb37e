#include "ttseval/llm_parsers.h"

#include <algorithm>
#include <cmath>

#include "ttseval/annotation_table.h"
#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

// Strips whitespace and the literal two-character "\n" sequences that the
// prompt's boxed template invites models to copy.
std::string strip_box_padding(std::string_view inner) {
  std::string out;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '\\' && i + 1 < inner.size() && inner[i + 1] == 'n') {
      ++i;
      continue;
    }
    out.push_back(inner[i]);
  }
  return std::string(trim(out));
}

std::optional<int> binary_digit(std::string_view token) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  return std::nullopt;
}

std::optional<int> small_integer(std::string_view token) {
  token = trim(token);
  if (token.empty() || token.size() > 3) return std::nullopt;
  int value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

CategoryLabel::CategoryLabel(int value) : value_(value) {
  if (value < 0 || value >= kCount) {
    throw PreconditionError("category out of range: " + std::to_string(value));
  }
}

const std::array<std::string_view, CategoryLabel::kCount>& category_names() {
  static constexpr std::array<std::string_view, CategoryLabel::kCount> kNames =
      {"Patient Background and Medical History",
       "Clinical Presentation and Examination Findings",
       "Diagnostic Testing and Results",
       "Clinical Management and Interventions",
       "Clinical Course, Outcomes, and Follow-up",
       "Other or Unknown"};
  return kNames;
}

std::string_view CategoryLabel::name() const {
  return category_names()[static_cast<std::size_t>(value_)];
}

int parse_boxed_binary(std::string_view response) {
  constexpr std::string_view kBoxed = "\\boxed{";
  std::size_t pos = response.rfind(kBoxed);
  if (pos != std::string_view::npos) {
    std::size_t open = pos + kBoxed.size();
    std::size_t close = response.find('}', open);
    if (close != std::string_view::npos) {
      auto digit =
          binary_digit(strip_box_padding(response.substr(open, close - open)));
      if (digit) return *digit;
    }
  }

  auto lines = split_lines(response);
  auto last = std::find_if(lines.rbegin(), lines.rend(),
                           [](std::string_view l) { return !trim(l).empty(); });
  if (last != lines.rend()) {
    std::string_view line = trim(*last);
    std::size_t space = line.find_last_of(" \t");
    std::string_view token =
        space == std::string_view::npos ? line : line.substr(space + 1);
    if (auto digit = binary_digit(token)) return *digit;
  }
  throw UnparseableVerdict("no boxed or trailing 0/1 verdict in response");
}

CategoryLabel parse_category_response(std::string_view response) {
  std::string lowered = ascii_lower(response);
  std::size_t pos = lowered.find("response:");
  if (pos != std::string::npos) {
    std::size_t i = pos + 9;
    while (i < response.size() && (response[i] < '0' || response[i] > '9')) {
      if (response[i] == '\n') break;
      ++i;
    }
    std::size_t j = i;
    while (j < response.size() && response[j] >= '0' && response[j] <= '9') ++j;
    if (j > i) {
      auto value = small_integer(response.substr(i, j - i));
      if (value && *value < CategoryLabel::kCount) return CategoryLabel(*value);
      throw UnparseableCategory("category out of range in response");
    }
  }
  if (auto value = small_integer(response);
      value && *value < CategoryLabel::kCount) {
    return CategoryLabel(*value);
  }
  throw UnparseableCategory("no category integer in response");
}

bool phenotype_consensus(const std::vector<PhenotypeVerdict>& verdicts) {
  if (verdicts.empty()) throw PreconditionError("no phenotype verdicts");
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const PhenotypeVerdict& v) { return v.label == 1; });
}

Demographics parse_demographics_response(std::string_view response) {
  TableScan scan = scan_bar_table(response, 3);
  for (const TableRow& row : scan.rows) {
    auto n_cases = parse_decimal(row.cells[0]);
    if (!n_cases || *n_cases < 0 || std::floor(*n_cases) != *n_cases) continue;
    Demographics d;
    d.n_cases = static_cast<int>(*n_cases);
    if (auto age = parse_decimal(row.cells[1]); age && *age >= 0) {
      d.age = static_cast<int>(std::floor(*age));
    }
    std::string gender = ascii_lower(row.cells[2]);
    if (gender == "male" || gender == "m" || gender == "man") {
      d.gender = "male";
    } else if (gender == "female" || gender == "f" || gender == "woman") {
      d.gender = "female";
    }
    return d;
  }
  throw EmptyAnnotation("no demographics row in response");
}

}  // namespace ttseval
