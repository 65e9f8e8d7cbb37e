#include "ttseval/manifest.h"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "ttseval/errors.h"
#include "ttseval/text.h"

namespace ttseval {

using json = nlohmann::ordered_json;

void update_inclusion(ManifestRecord& record) {
  bool included = record.is_case_report && record.is_sepsis_candidate;
  if (!record.phenotypes.empty()) {
    included = included &&
               std::any_of(record.phenotypes.begin(), record.phenotypes.end(),
                           [](const auto& vote) { return vote.second == 1; });
  }
  if (record.n_cases) included = included && *record.n_cases == 1;
  record.included = included;
}

std::string manifest_record_to_json(const ManifestRecord& record) {
  json j;
  j["doc_id"] = record.doc_id;
  j["is_case_report"] = record.is_case_report;
  j["is_sepsis_candidate"] = record.is_sepsis_candidate;
  j["phenotypes"] = json::object();
  for (const auto& [model, label] : record.phenotypes) {
    j["phenotypes"][model] = label;
  }
  j["n_cases"] = record.n_cases ? json(*record.n_cases) : json(nullptr);
  j["age"] = record.age ? json(*record.age) : json(nullptr);
  j["gender"] = record.gender ? json(*record.gender) : json(nullptr);
  j["included"] = record.included;
  return j.dump();
}

ManifestRecord manifest_record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DecodeError(std::string("manifest line is not JSON: ") + e.what());
  }
  try {
    ManifestRecord r;
    r.doc_id = j.at("doc_id").get<std::string>();
    r.is_case_report = j.at("is_case_report").get<bool>();
    r.is_sepsis_candidate = j.at("is_sepsis_candidate").get<bool>();
    if (j.contains("phenotypes") && j["phenotypes"].is_object()) {
      for (const auto& [model, label] : j["phenotypes"].items()) {
        r.phenotypes[model] = label.get<int>();
      }
    }
    if (j.contains("n_cases") && !j["n_cases"].is_null()) {
      r.n_cases = j["n_cases"].get<int>();
    }
    if (j.contains("age") && !j["age"].is_null()) r.age = j["age"].get<int>();
    if (j.contains("gender") && !j["gender"].is_null()) {
      r.gender = j["gender"].get<std::string>();
    }
    r.included = j.at("included").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed manifest record: ") + e.what());
  }
}

void write_manifest(const std::filesystem::path& path,
                    const CohortManifest& manifest) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& record : manifest.records) {
    out << manifest_record_to_json(record) << '\n';
  }
}

CohortManifest read_manifest(const std::filesystem::path& path) {
  CohortManifest manifest;
  std::string content = read_file(path.string());
  for (std::string_view line : split_lines(content)) {
    if (trim(line).empty()) continue;
    manifest.records.push_back(manifest_record_from_json(std::string(line)));
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return manifest;
}

}  // namespace ttseval
