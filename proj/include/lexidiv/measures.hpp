#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidiv/corpus.hpp"
#include "lexidiv/textproc.hpp"
#include "lexidiv/wordnet.hpp"

namespace lexidiv::measures {

inline constexpr std::size_t kMattrWindow = 50;
inline constexpr std::size_t kDispersionWindow = 20;

enum class Measure { volume, abundance, mattr, evenness, disparity, dispersion };

inline constexpr std::array<Measure, 6> kAllMeasures = {Measure::volume,   Measure::abundance,
                                                        Measure::mattr,    Measure::evenness,
                                                        Measure::disparity, Measure::dispersion};

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view s);

// "ld4" (mattr, evenness, disparity, dispersion), "ld6" (all six) or a comma
// separated list of measure names. Throws ValidationError.
std::vector<Measure> parse_feature_set(std::string_view spec);

// The six lexical-diversity dimensions of one text. Dispersion is on an
// inverse scale: higher means repetitions cluster more closely.
struct DiversityProfile {
  long volume = 0;
  long abundance = 0;
  double mattr = 0.0;
  double evenness = 0.0;
  double disparity = 0.0;
  double dispersion = 0.0;

  double value(Measure m) const;
  void set(Measure m, double v);

  bool operator==(const DiversityProfile&) const = default;
};

// Empty when the profile satisfies its domain invariants, else the name of
// the first violated field.
std::string invariant_violation(const DiversityProfile& p);

long volume(const text::LemmaSequence& seq);
long abundance(const text::LemmaSequence& seq);
// Percentage; mean windowed TTR, or whole-text TTR when shorter than window.
double mattr(const text::LemmaSequence& seq, std::size_t window = kMattrWindow);
// Shannon entropy over its maximum ln(S); 1 for a single type.
double evenness(const text::LemmaSequence& seq);
// Mean number of text types per synset, over synsets covered by the text.
double disparity(const text::LemmaSequence& seq, const wordnet::SenseIndex& index);
// Percentage of tokens whose nearest previous occurrence is <= window back.
double dispersion(const text::LemmaSequence& seq, std::size_t window = kDispersionWindow);

DiversityProfile profile_sequence(const text::LemmaSequence& seq, const wordnet::SenseIndex& index);

// Tokenize, lemmatize and measure. Throws MeasurementError naming the record
// when the text has no word tokens.
DiversityProfile profile(const corpus::CorpusRecord& record, const wordnet::Database& db);

struct ProfiledText {
  std::string id;
  std::string group;
  DiversityProfile profile;

  bool operator==(const ProfiledText&) const = default;
};

// One row per record, in record order. The OpenMP version distributes
// records over threads; the serial version is the reference it is tested
// against. On failure both throw the error of the earliest failing record.
std::vector<ProfiledText> profile_corpus(std::span<const corpus::CorpusRecord> records,
                                         const wordnet::Database& db);
std::vector<ProfiledText> profile_corpus_serial(std::span<const corpus::CorpusRecord> records,
                                                const wordnet::Database& db);

}  // namespace lexidiv::measures
