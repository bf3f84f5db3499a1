#include "lexidiv/textproc.hpp"

#include <algorithm>
#include <array>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace lexidiv::text {

namespace {

// "'s" on these is a contraction of "is"/"us"/"has", not a possessive.
constexpr std::array<std::string_view, 14> kContractionHosts = {
    "he", "here", "how", "it", "let", "she", "that", "there", "what", "when", "where", "who", "why", "one"};

struct Cursor {
  std::string_view s;
  int32_t i = 0;

  bool done() const { return i >= static_cast<int32_t>(s.size()); }

  // Next code point, or a negative value for an ill-formed sequence.
  UChar32 next() {
    UChar32 c = 0;
    U8_NEXT(s.data(), i, static_cast<int32_t>(s.size()), c);
    return c;
  }
};

bool is_apostrophe(UChar32 c) { return c == '\'' || c == 0x2019; }
bool is_hyphen(UChar32 c) { return c == '-' || c == 0x2010 || c == 0x2011; }
bool is_letter(UChar32 c) { return c >= 0 && u_isalpha(c); }

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool err = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, c, err);
  if (!err) out.append(buf, static_cast<std::size_t>(n));
}

void finish(std::string& token, std::vector<std::string>& out) {
  if (token.empty()) return;
  if (token.size() > 2 && token.ends_with("'s")) {
    std::string_view host(token.data(), token.size() - 2);
    if (std::find(kContractionHosts.begin(), kContractionHosts.end(), host) == kContractionHosts.end())
      token.resize(token.size() - 2);
  }
  out.push_back(std::move(token));
  token.clear();
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  Cursor cur{bytes};
  while (!cur.done())
    if (cur.next() < 0) return false;
  return true;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string token;
  Cursor cur{text};
  // A joiner (apostrophe/hyphen) is held back until a letter follows it.
  UChar32 pending_joiner = -1;
  while (!cur.done()) {
    const UChar32 c = cur.next();
    if (is_letter(c)) {
      if (pending_joiner >= 0) {
        token += is_apostrophe(pending_joiner) ? '\'' : '-';
        pending_joiner = -1;
      }
      append_utf8(token, u_tolower(c));
    } else if (!token.empty() && pending_joiner < 0 && (is_apostrophe(c) || is_hyphen(c))) {
      pending_joiner = c;
    } else {
      pending_joiner = -1;
      finish(token, out);
    }
  }
  finish(token, out);
  return out;
}

LemmaSequence lemmatize(const std::vector<std::string>& tokens, const wordnet::MorphTables& tables,
                        const wordnet::SenseIndex& index, std::string source_id) {
  LemmaSequence seq;
  seq.source_id = std::move(source_id);
  seq.lemmas.reserve(tokens.size());
  for (const auto& tok : tokens) {
    std::string lemma = tok;
    for (auto pos : wordnet::kAllPos) {
      auto bases = wordnet::morphy(tok, pos, tables, index);
      if (!bases.empty()) {
        lemma = std::move(bases.front());
        break;
      }
    }
    seq.lemmas.push_back(std::move(lemma));
  }
  return seq;
}

}  // namespace lexidiv::text
