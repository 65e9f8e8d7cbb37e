#ifndef TTSEVAL_LLM_PARSERS_H_
#define TTSEVAL_LLM_PARSERS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttseval {

struct PhenotypeVerdict {
  std::string doc_id;
  std::string model_id;
  int label = 0;  // 0 or 1
  std::string raw_response;
};

// One of the six fixed event categories, 0..5.
class CategoryLabel {
 public:
  static constexpr int kCount = 6;
  static constexpr int kOtherOrUnknown = 5;

  // Throws PreconditionError outside 0..5.
  explicit CategoryLabel(int value);

  int value() const { return value_; }
  std::string_view name() const;

  friend bool operator==(CategoryLabel, CategoryLabel) = default;
  friend auto operator<=>(CategoryLabel, CategoryLabel) = default;

 private:
  int value_;
};

const std::array<std::string_view, CategoryLabel::kCount>& category_names();

// Digit inside the last \boxed{...}; otherwise a lone trailing 0/1 token on
// the final non-empty line. Throws UnparseableVerdict.
int parse_boxed_binary(std::string_view response);

// First integer after "Response:", or the whole trimmed reply when it is a
// lone integer. Throws UnparseableCategory unless the value is 0..5.
CategoryLabel parse_category_response(std::string_view response);

// Either-model inclusion: true iff any verdict is positive.
bool phenotype_consensus(const std::vector<PhenotypeVerdict>& verdicts);

struct Demographics {
  int n_cases = 0;
  std::optional<int> age;
  std::optional<std::string> gender;  // "male" / "female"; nullopt if unknown
};

// Parses the `n_cases | age | gender` reply of the demographics query using
// the annotation table scanner. Throws EmptyAnnotation if no row parses.
Demographics parse_demographics_response(std::string_view response);

}  // namespace ttseval

#endif  // TTSEVAL_LLM_PARSERS_H_
