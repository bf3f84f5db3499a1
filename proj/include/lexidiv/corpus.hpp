#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexidiv::corpus {

enum class WriterType { human, llm };
enum class LlmModel { gpt35, gpt40, gpt45, o4mini };
enum class LanguageStatus { L1, L2 };
enum class Education { HS, BA, MA, PhD };

std::string_view to_string(WriterType v);
std::string_view to_string(LlmModel v);
std::string_view to_string(LanguageStatus v);
std::string_view to_string(Education v);

std::optional<WriterType> parse_writer_type(std::string_view s);
std::optional<LlmModel> parse_llm_model(std::string_view s);
std::optional<LanguageStatus> parse_language_status(std::string_view s);
std::optional<Education> parse_education(std::string_view s);

// Who produced a text. Full labels satisfy:
//   llm   => model set, status and education unset
//   human => status and education set, model unset
// Partial labels (e.g. just a writer type) occur only in synthetic profile
// tables built from pooled moments.
struct GroupLabel {
  WriterType writer_type = WriterType::human;
  std::optional<LlmModel> llm_model;
  std::optional<LanguageStatus> language_status;
  std::optional<Education> education;

  bool operator==(const GroupLabel&) const = default;
};

// Empty string when the label is a valid full label, otherwise the name of
// the offending field.
std::string invalid_field(const GroupLabel& label);

struct CorpusRecord {
  std::string id;
  std::string text;
  GroupLabel label;
};

// Reads `id,path,writer_type,llm_model,language_status,education`. Paths are
// relative to corpus_root; absolute paths are rejected.
std::vector<CorpusRecord> load_manifest(const std::filesystem::path& manifest_path,
                                        const std::filesystem::path& corpus_root);

// Canonical key: "llm:<model>" or "human:<status>:<education>".
std::string group_of(const GroupLabel& label);

// Inverse of group_of, also accepting the prefixes "llm", "human" and
// "human:<status>". Returns nullopt for anything else.
std::optional<GroupLabel> parse_group_key(std::string_view key);

// The twelve keys of the balanced human/LLM design, in presentation order.
std::span<const std::string_view> canonical_group_keys();

// Dependent variables a classifier or a grouped statistic can target.
enum class DependentVariable { writer_type, model, language_status, education, group12 };

std::optional<DependentVariable> parse_dependent_variable(std::string_view s);
std::string_view to_string(DependentVariable v);

// Class label of a group key under the given dependent variable; nullopt
// when the key does not carry that variable (e.g. `model` of a human text).
std::optional<std::string> class_label(std::string_view group_key, DependentVariable dv);

// Orders labels canonically: known enum values in declaration order (groups
// in canonical_group_keys order) first, anything else lexicographically.
std::vector<std::string> canonical_order(std::vector<std::string> labels, DependentVariable dv);

}  // namespace lexidiv::corpus
