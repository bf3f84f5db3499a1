#include "lexidiv/wordnet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lexidiv/error.hpp"

namespace lexidiv::wordnet {

namespace {

constexpr std::array<SuffixRule, 8> kNounRules = {{{"s", ""},
                                                   {"ses", "s"},
                                                   {"xes", "x"},
                                                   {"zes", "z"},
                                                   {"ches", "ch"},
                                                   {"shes", "sh"},
                                                   {"men", "man"},
                                                   {"ies", "y"}}};
constexpr std::array<SuffixRule, 8> kVerbRules = {{{"s", ""},
                                                   {"ies", "y"},
                                                   {"es", "e"},
                                                   {"es", ""},
                                                   {"ed", "e"},
                                                   {"ed", ""},
                                                   {"ing", "e"},
                                                   {"ing", ""}}};
constexpr std::array<SuffixRule, 4> kAdjRules = {{{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}}};

std::string normalize(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool to_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void fail(std::string_view source, std::size_t line_no, const std::string& what) {
  throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
}

bool pos_char_matches(std::string_view c, Pos pos) {
  switch (pos) {
    case Pos::noun: return c == "n";
    case Pos::verb: return c == "v";
    case Pos::adj: return c == "a" || c == "s";
    case Pos::adv: return c == "r";
  }
  return false;
}

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t start = 0, line_no = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    fn(content.substr(start, end - start), line_no);
    start = end + 1;
  }
}

std::string detect_version(std::string_view content) {
  std::string version;
  for_each_line(content, [&](std::string_view line, std::size_t) {
    if (!version.empty() || !line.starts_with("  ")) return;
    auto pos = line.find("WordNet ");
    if (pos == std::string_view::npos) return;
    pos += 8;
    std::size_t end = pos;
    while (end < line.size() && (std::isdigit(static_cast<unsigned char>(line[end])) || line[end] == '.')) ++end;
    if (end > pos) version.assign(line.substr(pos, end - pos));
  });
  return version;
}

std::string read_required(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing WordNet file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::vector<SynsetId> kEmptySynsets;
const std::vector<std::string> kEmptyBases;

}  // namespace

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "n";
    case Pos::verb: return "v";
    case Pos::adj: return "a";
    case Pos::adv: return "r";
  }
  return "";
}

std::string_view file_suffix(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adj: return "adj";
    case Pos::adv: return "adv";
  }
  return "";
}

void SenseIndex::add(std::string_view lemma, Pos pos, std::span<const std::uint32_t> offsets) {
  auto& set = entries_[normalize(lemma)][static_cast<std::size_t>(pos)];
  for (auto off : offsets) set.push_back({off, pos});
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

const std::array<std::vector<SynsetId>, 4>* SenseIndex::find(std::string_view lemma) const {
  auto it = lemma.find(' ') == std::string_view::npos ? entries_.find(std::string(lemma))
                                                      : entries_.find(normalize(lemma));
  return it == entries_.end() ? nullptr : &it->second;
}

const std::vector<SynsetId>& SenseIndex::lookup(std::string_view lemma, Pos pos) const {
  const auto* e = find(lemma);
  return e ? (*e)[static_cast<std::size_t>(pos)] : kEmptySynsets;
}

bool SenseIndex::contains(std::string_view lemma, Pos pos) const { return !lookup(lemma, pos).empty(); }

bool SenseIndex::contains(std::string_view lemma) const {
  const auto* e = find(lemma);
  if (!e) return false;
  return std::any_of(e->begin(), e->end(), [](const auto& v) { return !v.empty(); });
}

std::string SenseIndex::serialize() const {
  std::vector<std::string> lines;
  lines.reserve(entries_.size());
  for (const auto& [lemma, per_pos] : entries_) {
    for (auto pos : kAllPos) {
      const auto& set = per_pos[static_cast<std::size_t>(pos)];
      if (set.empty()) continue;
      std::string line = lemma;
      (line += ' ') += to_string(pos);
      for (const auto& s : set) (line += ' ') += std::to_string(s.offset);
      lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) (out += l) += '\n';
  return out;
}

void MorphTables::add_exception(std::string_view inflected, Pos pos, std::vector<std::string> bases) {
  auto& table = exceptions_[static_cast<std::size_t>(pos)];
  auto& list = table[normalize(inflected)];
  for (auto& b : bases) {
    auto base = normalize(b);
    if (std::find(list.begin(), list.end(), base) == list.end()) list.push_back(std::move(base));
  }
}

const std::vector<std::string>& MorphTables::exceptions(std::string_view inflected, Pos pos) const {
  const auto& table = exceptions_[static_cast<std::size_t>(pos)];
  auto it = table.find(inflected);
  return it == table.end() ? kEmptyBases : it->second;
}

std::size_t MorphTables::exception_count() const {
  std::size_t n = 0;
  for (const auto& t : exceptions_) n += t.size();
  return n;
}

std::span<const SuffixRule> MorphTables::suffix_rules(Pos pos) {
  switch (pos) {
    case Pos::noun: return kNounRules;
    case Pos::verb: return kVerbRules;
    case Pos::adj: return kAdjRules;
    case Pos::adv: return {};
  }
  return {};
}

void parse_index(std::string_view content, Pos pos, std::string_view source, SenseIndex& index) {
  std::vector<std::uint32_t> offsets;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (line.starts_with("  ")) return;
    const auto f = fields(line);
    if (f.empty()) return;
    if (f.size() < 6) fail(source, line_no, "too few fields");
    if (!pos_char_matches(f[1], pos)) fail(source, line_no, "unexpected pos '" + std::string(f[1]) + "'");
    std::size_t synset_cnt = 0, p_cnt = 0;
    if (!to_number(f[2], synset_cnt)) fail(source, line_no, "bad synset_cnt '" + std::string(f[2]) + "'");
    if (!to_number(f[3], p_cnt)) fail(source, line_no, "bad p_cnt '" + std::string(f[3]) + "'");
    if (synset_cnt == 0) fail(source, line_no, "synset_cnt is zero");
    if (f.size() != 4 + p_cnt + 2 + synset_cnt)
      fail(source, line_no,
           "expected " + std::to_string(4 + p_cnt + 2 + synset_cnt) + " fields, found " + std::to_string(f.size()));
    std::size_t sense_cnt = 0, tagsense_cnt = 0;
    if (!to_number(f[4 + p_cnt], sense_cnt) || !to_number(f[5 + p_cnt], tagsense_cnt))
      fail(source, line_no, "bad sense counts");
    offsets.clear();
    for (std::size_t k = 6 + p_cnt; k < f.size(); ++k) {
      std::uint32_t off = 0;
      if (!to_number(f[k], off)) fail(source, line_no, "bad synset offset '" + std::string(f[k]) + "'");
      offsets.push_back(off);
    }
    index.add(f[0], pos, offsets);
  });
}

void parse_exceptions(std::string_view content, Pos pos, std::string_view source, MorphTables& tables) {
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (line.starts_with("  ")) return;
    const auto f = fields(line);
    if (f.empty()) return;
    if (f.size() < 2) fail(source, line_no, "exception line needs an inflected form and at least one base");
    tables.add_exception(f[0], pos, std::vector<std::string>(f.begin() + 1, f.end()));
  });
}

Database load_wordnet(const std::filesystem::path& dir) {
  Database db;
  for (auto pos : kAllPos) {
    const auto index_path = dir / ("index." + std::string(file_suffix(pos)));
    const auto exc_path = dir / (std::string(file_suffix(pos)) + ".exc");
    const auto index_content = read_required(index_path);
    const auto exc_content = read_required(exc_path);
    if (pos == Pos::noun) {
      auto v = detect_version(index_content);
      if (!v.empty()) db.index.set_version(v);
    }
    parse_index(index_content, pos, index_path.string(), db.index);
    parse_exceptions(exc_content, pos, exc_path.string(), db.morph);
  }
  return db;
}

std::vector<std::string> morphy(std::string_view form, Pos pos, const MorphTables& tables,
                                const SenseIndex& index) {
  std::vector<std::string> out;
  auto push = [&](std::string s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  const auto key = normalize(form);
  for (const auto& base : tables.exceptions(key, pos)) push(base);
  for (const auto& rule : MorphTables::suffix_rules(pos)) {
    if (key.size() <= rule.suffix.size() || !std::string_view(key).ends_with(rule.suffix)) continue;
    std::string candidate = key.substr(0, key.size() - rule.suffix.size());
    candidate += rule.replacement;
    if (index.contains(candidate, pos)) push(std::move(candidate));
  }
  if (index.contains(key, pos)) push(key);
  return out;
}

std::vector<SynsetId> senses(std::string_view lemma, const SenseIndex& index) {
  std::vector<SynsetId> out;
  for (auto pos : kAllPos) {
    const auto& s = index.lookup(lemma, pos);
    out.insert(out.end(), s.begin(), s.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lexidiv::wordnet
