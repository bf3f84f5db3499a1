#include "lexidiv/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "lexidiv/csv.hpp"
#include "lexidiv/error.hpp"
#include "lexidiv/textproc.hpp"

namespace lexidiv::corpus {

namespace {

constexpr std::array<std::string_view, 12> kGroupKeys = {
    "human:L1:HS",  "human:L2:HS", "human:L1:BA", "human:L2:BA",
    "human:L1:MA",  "human:L2:MA", "human:L1:PhD", "human:L2:PhD",
    "llm:gpt35",    "llm:gpt40",   "llm:gpt45",   "llm:o4mini"};

constexpr std::array<std::string_view, 2> kWriterOrder = {"llm", "human"};
constexpr std::array<std::string_view, 4> kModelOrder = {"gpt35", "gpt40", "gpt45", "o4mini"};
constexpr std::array<std::string_view, 2> kStatusOrder = {"L1", "L2"};
constexpr std::array<std::string_view, 4> kEducationOrder = {"HS", "BA", "MA", "PhD"};

std::string read_file(const std::filesystem::path& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  *ok = static_cast<bool>(in) || in.eof();
  return buf.str();
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::vector<std::string_view> split_colon(std::string_view key) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = key.find(':', start);
    parts.push_back(key.substr(start, pos == std::string_view::npos ? key.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string_view to_string(WriterType v) { return v == WriterType::llm ? "llm" : "human"; }

std::string_view to_string(LlmModel v) { return kModelOrder[static_cast<std::size_t>(v)]; }

std::string_view to_string(LanguageStatus v) { return kStatusOrder[static_cast<std::size_t>(v)]; }

std::string_view to_string(Education v) { return kEducationOrder[static_cast<std::size_t>(v)]; }

std::optional<WriterType> parse_writer_type(std::string_view s) {
  if (s == "human") return WriterType::human;
  if (s == "llm") return WriterType::llm;
  return std::nullopt;
}

std::optional<LlmModel> parse_llm_model(std::string_view s) {
  for (std::size_t i = 0; i < kModelOrder.size(); ++i)
    if (s == kModelOrder[i]) return static_cast<LlmModel>(i);
  return std::nullopt;
}

std::optional<LanguageStatus> parse_language_status(std::string_view s) {
  for (std::size_t i = 0; i < kStatusOrder.size(); ++i)
    if (s == kStatusOrder[i]) return static_cast<LanguageStatus>(i);
  return std::nullopt;
}

std::optional<Education> parse_education(std::string_view s) {
  for (std::size_t i = 0; i < kEducationOrder.size(); ++i)
    if (s == kEducationOrder[i]) return static_cast<Education>(i);
  return std::nullopt;
}

std::string invalid_field(const GroupLabel& label) {
  if (label.writer_type == WriterType::llm) {
    if (!label.llm_model) return "llm_model";
    if (label.language_status) return "language_status";
    if (label.education) return "education";
  } else {
    if (label.llm_model) return "llm_model";
    if (!label.language_status) return "language_status";
    if (!label.education) return "education";
  }
  return {};
}

std::vector<CorpusRecord> load_manifest(const std::filesystem::path& manifest_path,
                                        const std::filesystem::path& corpus_root) {
  bool ok = true;
  const std::string content = read_file(manifest_path, &ok);
  if (!ok) throw IoError("cannot read manifest '" + manifest_path.string() + "'");

  const auto rows = csv::lines(content);
  if (rows.empty()) throw ValidationError("manifest '" + manifest_path.string() + "' is empty");
  const std::vector<std::string> expected = {"id",          "path",            "writer_type",
                                             "llm_model",   "language_status", "education"};
  if (csv::split_line(rows.front()) != expected)
    throw ValidationError("manifest header must be 'id,path,writer_type,llm_model,language_status,education'");

  std::vector<CorpusRecord> records;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (blank(rows[r])) continue;
    const auto fields = csv::split_line(rows[r]);
    const std::string where = "manifest line " + std::to_string(r + 1);
    if (fields.size() != 6)
      throw ValidationError(where + ": expected 6 fields, found " + std::to_string(fields.size()));

    const std::string& id = fields[0];
    if (id.empty()) throw ValidationError(where + ": field 'id' is empty");
    const std::string row = "row '" + id + "' (" + where + ")";
    if (!seen.insert(id).second) throw ValidationError(row + ": duplicate id");

    GroupLabel label;
    auto writer = parse_writer_type(fields[2]);
    if (!writer) throw ValidationError(row + ": field 'writer_type' has invalid value '" + fields[2] + "'");
    label.writer_type = *writer;
    if (!fields[3].empty()) {
      label.llm_model = parse_llm_model(fields[3]);
      if (!label.llm_model)
        throw ValidationError(row + ": field 'llm_model' has invalid value '" + fields[3] + "'");
    }
    if (!fields[4].empty()) {
      label.language_status = parse_language_status(fields[4]);
      if (!label.language_status)
        throw ValidationError(row + ": field 'language_status' has invalid value '" + fields[4] + "'");
    }
    if (!fields[5].empty()) {
      label.education = parse_education(fields[5]);
      if (!label.education)
        throw ValidationError(row + ": field 'education' has invalid value '" + fields[5] + "'");
    }
    if (auto bad = invalid_field(label); !bad.empty())
      throw ValidationError(row + ": field '" + bad + "' inconsistent with writer_type '" +
                            std::string(to_string(label.writer_type)) + "'");

    const std::filesystem::path rel(fields[1]);
    if (fields[1].empty()) throw ValidationError(row + ": field 'path' is empty");
    if (rel.is_absolute()) throw ValidationError(row + ": field 'path' must be relative to the corpus root");

    const auto full = corpus_root / rel;
    std::string text = read_file(full, &ok);
    if (!ok) throw LoadError(row + ": cannot read text file '" + full.string() + "'");
    if (!text::is_valid_utf8(text)) throw LoadError(row + ": text file '" + full.string() + "' is not valid UTF-8");
    if (blank(text)) throw ValidationError(row + ": text is empty");

    records.push_back({id, std::move(text), label});
  }
  return records;
}

std::string group_of(const GroupLabel& label) {
  std::string key(to_string(label.writer_type));
  if (label.writer_type == WriterType::llm) {
    if (label.llm_model) (key += ':') += to_string(*label.llm_model);
  } else if (label.language_status) {
    (key += ':') += to_string(*label.language_status);
    if (label.education) (key += ':') += to_string(*label.education);
  }
  return key;
}

std::optional<GroupLabel> parse_group_key(std::string_view key) {
  const auto parts = split_colon(key);
  GroupLabel label;
  auto writer = parse_writer_type(parts[0]);
  if (!writer) return std::nullopt;
  label.writer_type = *writer;
  if (*writer == WriterType::llm) {
    if (parts.size() > 2) return std::nullopt;
    if (parts.size() == 2) {
      label.llm_model = parse_llm_model(parts[1]);
      if (!label.llm_model) return std::nullopt;
    }
  } else {
    if (parts.size() > 3) return std::nullopt;
    if (parts.size() >= 2) {
      label.language_status = parse_language_status(parts[1]);
      if (!label.language_status) return std::nullopt;
    }
    if (parts.size() == 3) {
      label.education = parse_education(parts[2]);
      if (!label.education) return std::nullopt;
    }
  }
  return label;
}

std::span<const std::string_view> canonical_group_keys() { return kGroupKeys; }

std::optional<DependentVariable> parse_dependent_variable(std::string_view s) {
  if (s == "writer_type") return DependentVariable::writer_type;
  if (s == "model") return DependentVariable::model;
  if (s == "language_status") return DependentVariable::language_status;
  if (s == "education") return DependentVariable::education;
  if (s == "group12") return DependentVariable::group12;
  return std::nullopt;
}

std::string_view to_string(DependentVariable v) {
  switch (v) {
    case DependentVariable::writer_type: return "writer_type";
    case DependentVariable::model: return "model";
    case DependentVariable::language_status: return "language_status";
    case DependentVariable::education: return "education";
    case DependentVariable::group12: return "group12";
  }
  return "";
}

std::optional<std::string> class_label(std::string_view group_key, DependentVariable dv) {
  auto label = parse_group_key(group_key);
  if (!label) return std::nullopt;
  switch (dv) {
    case DependentVariable::writer_type: return std::string(to_string(label->writer_type));
    case DependentVariable::model:
      if (label->llm_model) return std::string(to_string(*label->llm_model));
      return std::nullopt;
    case DependentVariable::language_status:
      if (label->language_status) return std::string(to_string(*label->language_status));
      return std::nullopt;
    case DependentVariable::education:
      if (label->education) return std::string(to_string(*label->education));
      return std::nullopt;
    case DependentVariable::group12: return group_of(*label);
  }
  return std::nullopt;
}

std::vector<std::string> canonical_order(std::vector<std::string> labels, DependentVariable dv) {
  std::span<const std::string_view> known;
  switch (dv) {
    case DependentVariable::writer_type: known = kWriterOrder; break;
    case DependentVariable::model: known = kModelOrder; break;
    case DependentVariable::language_status: known = kStatusOrder; break;
    case DependentVariable::education: known = kEducationOrder; break;
    case DependentVariable::group12: known = kGroupKeys; break;
  }
  auto rank = [&](const std::string& s) {
    auto it = std::find(known.begin(), known.end(), s);
    return static_cast<std::size_t>(it - known.begin());
  };
  std::sort(labels.begin(), labels.end(), [&](const std::string& a, const std::string& b) {
    auto ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace lexidiv::corpus
