#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexidiv/wordnet.hpp"

namespace lexidiv::text {

// Lowercase, non-empty lemmas in text order; one per recognised word token.
struct LemmaSequence {
  std::vector<std::string> lemmas;
  std::string source_id;

  std::size_t size() const { return lemmas.size(); }
  bool empty() const { return lemmas.empty(); }
};

bool is_valid_utf8(std::string_view bytes);

// Word tokens: maximal runs of Unicode letters, allowing an apostrophe or
// hyphen between two letters. Lowercased; a possessive 's is removed except
// on the pronoun/adverb contractions (it's, that's, there's, ...). Numerals
// and punctuation are dropped. Invalid UTF-8 sequences act as separators.
std::vector<std::string> tokenize(std::string_view text);

// Maps each token to its first morphy base form, probing noun, verb, adj,
// adv in that order; tokens with no base form in any pos map to themselves.
LemmaSequence lemmatize(const std::vector<std::string>& tokens, const wordnet::MorphTables& tables,
                        const wordnet::SenseIndex& index, std::string source_id = {});

}  // namespace lexidiv::text
