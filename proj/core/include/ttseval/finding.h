#ifndef TTSEVAL_FINDING_H_
#define TTSEVAL_FINDING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttseval {

// i2b2 event types requested by the Interval+Type prompt augmentation.
enum class EventType {
  kFactual = 0,
  kPossible,
  kHypothetical,
  kConditional,
  kNegated,
  kHistorical,
  kUncertain,
};

std::string_view event_type_name(EventType type);
// Case-insensitive lookup; nullopt for names outside the vocabulary.
std::optional<EventType> event_type_from_name(std::string_view name);

// One clinical finding with its time relative to presentation, in hours.
// Negative times precede admission.
struct Finding {
  std::string text;
  double time_hours = 0.0;
  std::optional<double> interval_end_hours;
  std::optional<EventType> event_type;

  friend bool operator==(const Finding&, const Finding&) = default;
};

enum class PromptVariant {
  kMain,
  kNoRole,
  kZeroShot,
  kNoExpansion,
  kInterval,
  kIntervalType,
};

// Number of bar-separated columns the variant's table carries.
std::size_t column_count(PromptVariant variant);

// Short token used on the command line and in annotation file names:
// main, norole, zeroshot, noexpand, interval, intervaltype.
std::string_view variant_token(PromptVariant variant);
std::optional<PromptVariant> variant_from_token(std::string_view token);

struct ParseWarning {
  std::size_t line_number = 0;  // 1-based
  std::string reason;

  friend bool operator==(const ParseWarning&, const ParseWarning&) = default;
};

// The findings of one document from one annotator, in source row order.
struct Annotation {
  std::string doc_id;
  std::vector<Finding> findings;
  std::string annotator_id;
  PromptVariant variant = PromptVariant::kMain;
  std::vector<ParseWarning> parse_warnings;
};

}  // namespace ttseval

#endif  // TTSEVAL_FINDING_H_
