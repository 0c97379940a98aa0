#ifndef TERMDATA_LEMMATIZER_HPP
#define TERMDATA_LEMMATIZER_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "termdata/corpus.hpp"
#include "termdata/morph.hpp"

namespace termdata {

// Deterministic lookup-table lemmatizer built from annotated data. Stands in
// for an external tagger in tests and for glossary-side lemma matching;
// real pipelines ingest CoNLL-U instead. Lookup is total: unknown forms
// lemmatize to themselves with UPOS X.
class LookupLemmatizer {
 public:
  LookupLemmatizer() = default;
  LookupLemmatizer(std::unordered_map<std::string, std::pair<std::string, std::string>> table,
                   bool fold_case)
      : table_(std::move(table)), fold_case_(fold_case) {}

  MorphToken lemmatize_token(const Token& form) const;
  MorphSentence lemmatize(const TokenSeq& tokens) const;

  std::size_t size() const { return table_.size(); }
  bool fold_case() const { return fold_case_; }

  // TSV dump (form<TAB>lemma<TAB>upos, sorted by form) for reuse.
  void save(const std::string& path) const;

 private:
  std::unordered_map<std::string, std::pair<std::string, std::string>> table_;
  bool fold_case_ = false;
};

enum class LemmaSourceFormat { Auto, Conllu, Tsv };

// Builds the table from CoNLL-U files and/or TSV (form<TAB>lemma<TAB>upos)
// files: the most frequent (lemma, upos) per form wins, frequency ties break
// to the lexicographically smaller pair. Errors when no rows were read.
LookupLemmatizer build_lookup(const std::vector<std::string>& paths,
                              LemmaSourceFormat format = LemmaSourceFormat::Auto,
                              bool fold_case = false);

}  // namespace termdata

#endif  // TERMDATA_LEMMATIZER_HPP
