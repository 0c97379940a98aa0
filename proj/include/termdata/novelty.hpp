#ifndef TERMDATA_NOVELTY_HPP
#define TERMDATA_NOVELTY_HPP

#include <string>
#include <vector>

#include "termdata/corpus.hpp"

namespace termdata {

struct NoveltyOptions {
  bool lowercase = false;
};

struct NovelForm {
  std::string form;
  std::size_t frequency = 0;
  std::vector<std::size_t> example_sentences;  // up to 3, 0-based
};

struct NoveltyReport {
  std::size_t hypothesis_types = 0;
  std::size_t novel_tokens = 0;
  // every listed form is absent from both training vocabularies;
  // sorted by descending frequency, then by form
  std::vector<NovelForm> forms;
};

// Hypothesis wordform types found in neither the source nor the target side
// of the training data. Training files stream through one pass; memory stays
// proportional to the type count. Whether a novel form is a valid word is a
// manual judgment, out of scope here.
NoveltyReport novel_wordforms(const std::vector<TokenSeq>& hypotheses,
                              const std::string& training_src_path,
                              const std::string& training_tgt_path,
                              const NoveltyOptions& options = {});

}  // namespace termdata

#endif  // TERMDATA_NOVELTY_HPP
