#ifndef TERMDATA_MORPH_HPP
#define TERMDATA_MORPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "termdata/corpus.hpp"

namespace termdata {

// Universal POS tags; anything unknown or missing ingests as X.
bool is_upos(const std::string& tag);

struct MorphToken {
  Token form;
  Token lemma;  // never empty: falls back to form
  std::string upos = "X";
};

using MorphSentence = std::vector<MorphToken>;

// Per-token lemma/UPOS annotations for one side of a corpus, one entry per
// sentence. Produced by an external tagger; ingested from its CoNLL-U output.
class MorphLayer {
 public:
  MorphLayer() = default;
  explicit MorphLayer(std::vector<MorphSentence> sentences) : sentences_(std::move(sentences)) {}

  const std::vector<MorphSentence>& sentences() const { return sentences_; }
  std::size_t size() const { return sentences_.size(); }
  const MorphSentence& operator[](std::size_t i) const { return sentences_[i]; }

 private:
  std::vector<MorphSentence> sentences_;
};

// Reads the CoNLL-U subset: columns ID, FORM, LEMMA, UPOS; blank line ends a
// sentence; '#' comment lines and multiword ranges ("3-4") are skipped;
// further columns are ignored. "_" LEMMA falls back to FORM, "_" or unknown
// UPOS becomes X. A non-integer ID on a non-range row is a parse error.
MorphLayer load_conllu_morph(const std::string& path);

enum class Side { Source, Target };

struct AnnotatedCorpus {
  ParallelCorpus corpus;
  std::optional<MorphLayer> source_morph;
  std::optional<MorphLayer> target_morph;

  const MorphLayer& morph(Side side) const {
    return side == Side::Source ? *source_morph : *target_morph;
  }
};

// Fails (InputError, citing the first mismatching sentence) unless the layer
// matches the corpus sentence-for-sentence and token-for-token, with exact,
// case-sensitive form equality.
AnnotatedCorpus attach_morph(ParallelCorpus corpus, MorphLayer layer, Side side);
void attach_morph(AnnotatedCorpus& annotated, MorphLayer layer, Side side);

}  // namespace termdata

#endif  // TERMDATA_MORPH_HPP
