#ifndef TTSEVAL_MANIFEST_H_
#define TTSEVAL_MANIFEST_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ttseval {

// Screening, phenotyping and demographic verdicts for one document.
struct ManifestRecord {
  std::string doc_id;
  bool is_case_report = false;
  bool is_sepsis_candidate = false;
  std::map<std::string, int> phenotypes;  // model id -> 0/1
  std::optional<int> n_cases;
  std::optional<int> age;
  std::optional<std::string> gender;
  bool included = false;

  friend bool operator==(const ManifestRecord&,
                         const ManifestRecord&) = default;
};

struct CohortManifest {
  std::vector<ManifestRecord> records;  // sorted by doc_id
};

// Re-derives `included` from the other fields: both screens passed, any
// phenotype vote positive (when votes exist), and exactly one case (when the
// case count is known).
void update_inclusion(ManifestRecord& record);

// One JSON object per line with fields doc_id, is_case_report,
// is_sepsis_candidate, phenotypes, n_cases, age, gender, included.
std::string manifest_record_to_json(const ManifestRecord& record);
ManifestRecord manifest_record_from_json(const std::string& line);

void write_manifest(const std::filesystem::path& path,
                    const CohortManifest& manifest);
CohortManifest read_manifest(const std::filesystem::path& path);

}  // namespace ttseval

#endif  // TTSEVAL_MANIFEST_H_
