#ifndef TERMDATA_TERM_ACCURACY_HPP
#define TERMDATA_TERM_ACCURACY_HPP

#include <optional>
#include <string>
#include <vector>

#include "termdata/annotate.hpp"
#include "termdata/corpus.hpp"

namespace termdata {

struct TermAccuracyOptions {
  bool case_insensitive = true;
};

struct TermJudgment {
  std::size_t sentence_index = 0;
  TokenSeq expected;
  std::string source_term;
  bool matched = false;
};

struct TermAccuracyReport {
  std::size_t total = 0;
  std::size_t matched = 0;
  // 100 * matched / total; undefined (not 0) when there are no occurrences
  std::optional<double> accuracy_percent;
  std::vector<TermJudgment> details;
};

// Lemmatized term exact-match accuracy: an expectation counts as matched iff
// its lemma sequence occurs contiguously in that sentence's hypothesis
// lemmas. Every occurrence is judged independently.
TermAccuracyReport term_accuracy(const std::vector<TokenSeq>& hypothesis_lemmas,
                                 const std::vector<TermExpectation>& expectations,
                                 const TermAccuracyOptions& options = {});

}  // namespace termdata

#endif  // TERMDATA_TERM_ACCURACY_HPP
