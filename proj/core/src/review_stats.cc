#include "ttseval/review_stats.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <map>
#include <set>

#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {
namespace {

constexpr std::array<std::string_view, 4> kQualityNames = {
    "Excellent", "Good", "Acceptable", "Poor"};

}  // namespace

Agreement confusion_agreement(const ConfusionMatrix2x2& m) {
  if (m.yes_yes < 0 || m.yes_no < 0 || m.no_yes < 0 || m.no_no < 0) {
    throw PreconditionError("confusion matrix cells must be non-negative");
  }
  if (m.total() == 0) throw UndefinedMetric("empty confusion matrix");
  double agreement =
      static_cast<double>(m.yes_yes + m.no_no) / static_cast<double>(m.total());
  return {agreement, agreement};
}

std::optional<Quality> quality_from_name(std::string_view name) {
  std::string wanted = ascii_lower(trim(name));
  for (std::size_t i = 0; i < kQualityNames.size(); ++i) {
    if (ascii_lower(kQualityNames[i]) == wanted) {
      return static_cast<Quality>(i);
    }
  }
  return std::nullopt;
}

std::string_view quality_name(Quality quality) {
  return kQualityNames.at(static_cast<std::size_t>(quality));
}

std::map<std::string, ReviewSummary> review_stats(
    const std::vector<ReportRanking>& reports,
    std::string_view manual_annotator_id) {
  if (reports.empty()) throw PreconditionError("no review rankings");
  std::set<std::string> annotators;
  for (const auto& report : reports) {
    for (const auto& entry : report.entries) {
      annotators.insert(entry.annotator_id);
    }
  }

  struct Tally {
    double rank_sum = 0.0;
    int top1 = 0;
    int top1_llm = 0;
    std::array<int, 4> quality{};
  };
  std::map<std::string, Tally> tallies;

  for (const auto& report : reports) {
    std::map<std::string, const RankEntry*> by_id;
    for (const auto& entry : report.entries) {
      if (!by_id.emplace(entry.annotator_id, &entry).second) {
        throw PreconditionError("annotator " + entry.annotator_id +
                                " ranked twice in " + report.doc_id);
      }
    }
    int best_llm = std::numeric_limits<int>::max();
    for (const auto& id : annotators) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw PreconditionError("annotator " + id + " missing from " +
                                report.doc_id);
      }
      if (id != manual_annotator_id) {
        best_llm = std::min(best_llm, it->second->rank);
      }
    }
    for (const auto& [id, entry] : by_id) {
      Tally& t = tallies[id];
      t.rank_sum += entry->rank;
      if (entry->rank == 1) ++t.top1;
      if (id != manual_annotator_id && entry->rank == best_llm) ++t.top1_llm;
      ++t.quality[static_cast<std::size_t>(entry->quality)];
    }
  }

  const double n = static_cast<double>(reports.size());
  std::map<std::string, ReviewSummary> out;
  for (const auto& [id, t] : tallies) {
    ReviewSummary s;
    s.mean_rank = t.rank_sum / n;
    s.top1 = t.top1 / n;
    if (id != manual_annotator_id) s.top1_llm = t.top1_llm / n;
    int cumulative = 0;
    for (std::size_t q = 0; q < t.quality.size(); ++q) {
      cumulative += t.quality[q];
      s.at_least[static_cast<Quality>(q)] = cumulative / n;
    }
    out[id] = s;
  }
  return out;
}

std::vector<ReportRanking> parse_rankings_csv(std::string_view text) {
  std::map<std::string, ReportRanking> reports;
  bool header = true;
  std::size_t line_number = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_number;
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto cells = split(line, ',');
    auto fail = [&](const std::string& why) {
      return DecodeError("rankings line " + std::to_string(line_number) + ": " +
                         why);
    };
    if (cells.size() != 4) throw fail("expected 4 columns");
    std::string doc_id(trim(cells[0]));
    std::string annotator(trim(cells[1]));
    std::string_view rank_text = trim(cells[2]);
    int rank = 0;
    auto [ptr, ec] = std::from_chars(rank_text.data(),
                                     rank_text.data() + rank_text.size(), rank);
    if (ec != std::errc() || ptr != rank_text.data() + rank_text.size() ||
        rank < 1) {
      throw fail("bad rank '" + std::string(rank_text) + "'");
    }
    auto quality = quality_from_name(trim(cells[3]));
    if (!quality) throw fail("unknown quality '" + std::string(cells[3]) + "'");
    if (doc_id.empty() || annotator.empty()) throw fail("empty id");
    auto& report = reports[doc_id];
    report.doc_id = doc_id;
    report.entries.push_back({annotator, rank, *quality});
  }
  std::vector<ReportRanking> out;
  for (auto& [id, report] : reports) out.push_back(std::move(report));
  return out;
}

}  // namespace ttseval
