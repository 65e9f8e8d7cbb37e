#ifndef TTSEVAL_PROMPTS_H_
#define TTSEVAL_PROMPTS_H_

#include <optional>
#include <string>
#include <string_view>

#include "ttseval/finding.h"

namespace ttseval {

// One chat-completion query. The model id is filled in by the caller; the
// builders below leave it empty.
struct ChatRequest {
  std::string model_id;
  std::optional<std::string> system_text;
  std::string user_text;
  int max_output = 4096;
  double temperature = 0.0;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

// Sepsis-3 phenotyping query; the case follows "Here is the case: ".
ChatRequest build_phenotype_prompt(std::string_view case_text);

// Clinical finding/timestamp extraction. NoRole, ZeroShot and NoExpansion
// each drop one span of the main prompt; Interval and IntervalType widen
// the requested table and the worked example.
ChatRequest build_annotation_prompt(std::string_view case_text,
                                    PromptVariant variant);

// Assignment of one finding to the six fixed event categories.
ChatRequest build_category_prompt(std::string_view event_text);

// Case count, age and gender as a single bar-separated row. This query is
// not printed in the source material; its wording is ours.
ChatRequest build_demographics_prompt(std::string_view case_text);

// The spans the ablations remove, exposed so callers and tests can check
// that each ablation differs from the main prompt by exactly one span.
namespace prompt_spans {
std::string_view role();
std::string_view expansion();
// The worked example block for the two-column variants, ending just before
// the conjunction instruction.
std::string zero_shot_example();
// The sixteen rows of the worked example table exactly as printed.
std::string_view example_rows();
}  // namespace prompt_spans

}  // namespace ttseval

#endif  // TTSEVAL_PROMPTS_H_
