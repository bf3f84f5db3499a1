#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexidiv::wordnet {

enum class Pos : std::uint8_t { noun = 0, verb = 1, adj = 2, adv = 3 };

inline constexpr std::array<Pos, 4> kAllPos = {Pos::noun, Pos::verb, Pos::adj, Pos::adv};

std::string_view to_string(Pos pos);
// The wndb file suffix ("noun", "verb", "adj", "adv").
std::string_view file_suffix(Pos pos);

// A synset is identified by its data-file byte offset together with its part
// of speech (offsets are only unique within one data file).
struct SynsetId {
  std::uint32_t offset = 0;
  Pos pos = Pos::noun;

  auto operator<=>(const SynsetId&) const = default;
};

// Immutable (lemma, pos) -> synset-offset membership table.
class SenseIndex {
 public:
  SenseIndex() = default;

  // Adds offsets for (lemma, pos); duplicates within a set are ignored.
  // Spaces in the lemma are stored as underscores.
  void add(std::string_view lemma, Pos pos, std::span<const std::uint32_t> offsets);

  // Sorted, duplicate-free; empty for an absent lemma.
  const std::vector<SynsetId>& lookup(std::string_view lemma, Pos pos) const;
  bool contains(std::string_view lemma, Pos pos) const;
  bool contains(std::string_view lemma) const;

  std::size_t lemma_count() const { return entries_.size(); }
  const std::string& version() const { return version_; }
  void set_version(std::string v) { version_ = std::move(v); }

  // One line per (lemma, pos): "lemma pos offset offset ...", lines sorted.
  std::string serialize() const;

 private:
  const std::array<std::vector<SynsetId>, 4>* find(std::string_view lemma) const;

  std::unordered_map<std::string, std::array<std::vector<SynsetId>, 4>> entries_;
  std::string version_ = "unknown";
};

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
};

class MorphTables {
 public:
  MorphTables() = default;

  void add_exception(std::string_view inflected, Pos pos, std::vector<std::string> bases);
  // Base forms in file order; empty when the form has no exception entry.
  const std::vector<std::string>& exceptions(std::string_view inflected, Pos pos) const;
  std::size_t exception_count() const;

  // Ordered detachment rules for the pos.
  static std::span<const SuffixRule> suffix_rules(Pos pos);

 private:
  std::array<std::map<std::string, std::vector<std::string>, std::less<>>, 4> exceptions_;
};

struct Database {
  SenseIndex index;
  MorphTables morph;
};

// Parses index.{noun,verb,adj,adv} and {noun,verb,adj,adv}.exc from `dir`.
Database load_wordnet(const std::filesystem::path& dir);

// Parsing entry points shared by load_wordnet and the tests. `source` names
// the file in error messages.
void parse_index(std::string_view content, Pos pos, std::string_view source, SenseIndex& index);
void parse_exceptions(std::string_view content, Pos pos, std::string_view source, MorphTables& tables);

// Candidate base forms of `form` as `pos`, best first, duplicates removed:
// exception-table hits, then attested suffix-rule outputs, then the form
// itself when attested.
std::vector<std::string> morphy(std::string_view form, Pos pos, const MorphTables& tables,
                                const SenseIndex& index);

// Union over all parts of speech, sorted.
std::vector<SynsetId> senses(std::string_view lemma, const SenseIndex& index);

}  // namespace lexidiv::wordnet
