#ifndef TERMDATA_GLOSSARY_HPP
#define TERMDATA_GLOSSARY_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "termdata/corpus.hpp"

namespace termdata {

// One bilingual glossary row. The target side is a dictionary (lemma) form
// by construction; translators' glossaries never list inflections.
struct TermEntry {
  TokenSeq source_tokens;
  TokenSeq target_lemma_tokens;
  std::string upos_hint;  // optional, empty when absent
};

// A candidate occurrence of an entry in a sentence: span [begin, end) over
// the sentence tokens.
struct TermMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t entry = 0;  // index into Glossary::entries()
};

// Entries in file order with a first-token index for span matching.
// Immutable after loading.
class Glossary {
 public:
  Glossary() = default;
  explicit Glossary(std::vector<TermEntry> entries);

  const std::vector<TermEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // All (span, entry) matches of any entry against the token sequence,
  // without overlap resolution. Matches come out ordered by begin, then by
  // descending length, then by entry file order. `fold_case` compares
  // case-insensitively via fold_lower.
  std::vector<TermMatch> find_candidates(const TokenSeq& tokens, bool fold_case) const;

 private:
  std::vector<TermEntry> entries_;
  std::vector<TokenSeq> folded_sources_;
  // first source token (exact and case-folded) -> entry indices, longest
  // source sequence first, then file order
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_folded_;
};

// Loads TSV rows: source_term<TAB>target_lemma[<TAB>UPOS], both term fields
// whitespace-tokenized. Duplicate (source, target) rows collapse with a
// warning; a row with fewer than 2 columns is a parse error.
Glossary load_glossary(const std::string& path);

}  // namespace termdata

#endif  // TERMDATA_GLOSSARY_HPP
