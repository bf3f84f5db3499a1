#include "lexidiv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <unordered_map>

#include "lexidiv/error.hpp"

namespace lexidiv::measures {

namespace {

// Lemmas replaced by dense ids in order of first appearance.
std::vector<std::size_t> intern(const text::LemmaSequence& seq, std::size_t* types = nullptr) {
  std::unordered_map<std::string_view, std::size_t> ids;
  ids.reserve(seq.size());
  std::vector<std::size_t> out;
  out.reserve(seq.size());
  for (const auto& l : seq.lemmas) out.push_back(ids.try_emplace(l, ids.size()).first->second);
  if (types) *types = ids.size();
  return out;
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::volume: return "volume";
    case Measure::abundance: return "abundance";
    case Measure::mattr: return "mattr";
    case Measure::evenness: return "evenness";
    case Measure::disparity: return "disparity";
    case Measure::dispersion: return "dispersion";
  }
  return "";
}

std::optional<Measure> parse_measure(std::string_view s) {
  for (auto m : kAllMeasures)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::vector<Measure> parse_feature_set(std::string_view spec) {
  if (spec == "ld4") return {Measure::mattr, Measure::evenness, Measure::disparity, Measure::dispersion};
  if (spec == "ld6") return {kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    auto name = spec.substr(start, end - start);
    auto m = parse_measure(name);
    if (!m) throw ValidationError("unknown feature '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), *m) != out.end())
      throw ValidationError("feature '" + std::string(name) + "' listed twice");
    out.push_back(*m);
    start = end + 1;
  }
  return out;
}

double DiversityProfile::value(Measure m) const {
  switch (m) {
    case Measure::volume: return static_cast<double>(volume);
    case Measure::abundance: return static_cast<double>(abundance);
    case Measure::mattr: return mattr;
    case Measure::evenness: return evenness;
    case Measure::disparity: return disparity;
    case Measure::dispersion: return dispersion;
  }
  return 0.0;
}

void DiversityProfile::set(Measure m, double v) {
  switch (m) {
    case Measure::volume: volume = std::lround(v); break;
    case Measure::abundance: abundance = std::lround(v); break;
    case Measure::mattr: mattr = v; break;
    case Measure::evenness: evenness = v; break;
    case Measure::disparity: disparity = v; break;
    case Measure::dispersion: dispersion = v; break;
  }
}

std::string invariant_violation(const DiversityProfile& p) {
  if (p.volume < 1) return "volume";
  if (p.abundance < 1 || p.abundance > p.volume) return "abundance";
  if (!(p.mattr > 0.0 && p.mattr <= 100.0)) return "mattr";
  if (!(p.evenness >= 0.0 && p.evenness <= 1.0)) return "evenness";
  if (!(p.disparity >= 1.0)) return "disparity";
  if (!(p.dispersion >= 0.0 && p.dispersion <= 100.0)) return "dispersion";
  return {};
}

long volume(const text::LemmaSequence& seq) { return static_cast<long>(seq.size()); }

long abundance(const text::LemmaSequence& seq) {
  std::size_t types = 0;
  intern(seq, &types);
  return static_cast<long>(types);
}

double mattr(const text::LemmaSequence& seq, std::size_t window) {
  std::size_t types = 0;
  const auto ids = intern(seq, &types);
  const std::size_t n = ids.size();
  if (n == 0 || window == 0) return 0.0;
  if (n < window) return 100.0 * static_cast<double>(types) / static_cast<double>(n);

  std::vector<std::size_t> counts(types, 0);
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < window; ++i)
    if (counts[ids[i]]++ == 0) ++distinct;
  // Integer accumulation keeps the mean exact up to the final division.
  unsigned long long total = distinct;
  for (std::size_t i = window; i < n; ++i) {
    if (--counts[ids[i - window]] == 0) --distinct;
    if (counts[ids[i]]++ == 0) ++distinct;
    total += distinct;
  }
  const double windows = static_cast<double>(n - window + 1);
  return 100.0 * static_cast<double>(total) / (static_cast<double>(window) * windows);
}

double evenness(const text::LemmaSequence& seq) {
  std::size_t types = 0;
  const auto ids = intern(seq, &types);
  if (types <= 1) return 1.0;
  std::vector<std::size_t> counts(types, 0);
  for (auto id : ids) ++counts[id];
  if (std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return c == counts.front(); })) return 1.0;
  const double n = static_cast<double>(ids.size());
  double h = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return std::min(1.0, h / std::log(static_cast<double>(types)));
}

double disparity(const text::LemmaSequence& seq, const wordnet::SenseIndex& index) {
  std::map<wordnet::SynsetId, std::size_t> members;
  std::unordered_map<std::string_view, bool> visited;
  for (const auto& lemma : seq.lemmas) {
    if (!visited.try_emplace(lemma, true).second) continue;
    for (const auto& s : wordnet::senses(lemma, index)) ++members[s];
  }
  if (members.empty()) return 1.0;
  std::size_t total = 0;
  for (const auto& [synset, n] : members) total += n;
  return static_cast<double>(total) / static_cast<double>(members.size());
}

double dispersion(const text::LemmaSequence& seq, std::size_t window) {
  std::size_t types = 0;
  const auto ids = intern(seq, &types);
  if (ids.empty()) return 0.0;
  constexpr std::size_t kNever = static_cast<std::size_t>(-1);
  std::vector<std::size_t> last(types, kNever);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (last[ids[i]] != kNever && i - last[ids[i]] <= window) ++hits;
    last[ids[i]] = i;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ids.size());
}

DiversityProfile profile_sequence(const text::LemmaSequence& seq, const wordnet::SenseIndex& index) {
  DiversityProfile p;
  p.volume = volume(seq);
  p.abundance = abundance(seq);
  p.mattr = mattr(seq);
  p.evenness = evenness(seq);
  p.disparity = disparity(seq, index);
  p.dispersion = dispersion(seq);
  return p;
}

DiversityProfile profile(const corpus::CorpusRecord& record, const wordnet::Database& db) {
  const auto tokens = text::tokenize(record.text);
  if (tokens.empty()) throw MeasurementError("record '" + record.id + "': text contains no word tokens");
  const auto seq = text::lemmatize(tokens, db.morph, db.index, record.id);
  return profile_sequence(seq, db.index);
}

std::vector<ProfiledText> profile_corpus_serial(std::span<const corpus::CorpusRecord> records,
                                                const wordnet::Database& db) {
  std::vector<ProfiledText> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.id, corpus::group_of(r.label), profile(r, db)});
  return out;
}

std::vector<ProfiledText> profile_corpus(std::span<const corpus::CorpusRecord> records,
                                         const wordnet::Database& db) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<ProfiledText> out(records.size());
  std::vector<std::exception_ptr> errors(records.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = {r.id, corpus::group_of(r.label), profile(r, db)};
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace lexidiv::measures
