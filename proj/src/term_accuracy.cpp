#include "termdata/term_accuracy.hpp"

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

bool contains_contiguous(const TokenSeq& haystack, const TokenSeq& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return needle.empty();
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; hit && k < needle.size(); ++k) {
      hit = haystack[i + k] == needle[k];
    }
    if (hit) return true;
  }
  return false;
}

TokenSeq folded(const TokenSeq& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(fold_lower(t));
  return out;
}

}  // namespace

TermAccuracyReport term_accuracy(const std::vector<TokenSeq>& hypothesis_lemmas,
                                 const std::vector<TermExpectation>& expectations,
                                 const TermAccuracyOptions& options) {
  TermAccuracyReport report;
  std::vector<TokenSeq> view;
  if (options.case_insensitive) {
    view.reserve(hypothesis_lemmas.size());
    for (const auto& sent : hypothesis_lemmas) view.push_back(folded(sent));
  }
  const auto& lemmas = options.case_insensitive ? view : hypothesis_lemmas;
  for (const auto& expectation : expectations) {
    if (expectation.sentence_index >= lemmas.size()) {
      throw InputError("term expectation refers to sentence " +
                       std::to_string(expectation.sentence_index) + " but only " +
                       std::to_string(lemmas.size()) + " hypotheses were given");
    }
    TermJudgment judgment;
    judgment.sentence_index = expectation.sentence_index;
    judgment.expected = expectation.expected_lemma_tokens;
    judgment.source_term = expectation.source_term;
    const TokenSeq needle = options.case_insensitive
                                ? folded(expectation.expected_lemma_tokens)
                                : expectation.expected_lemma_tokens;
    judgment.matched = contains_contiguous(lemmas[expectation.sentence_index], needle);
    ++report.total;
    if (judgment.matched) ++report.matched;
    report.details.push_back(std::move(judgment));
  }
  if (report.total > 0) {
    report.accuracy_percent =
        100.0 * static_cast<double>(report.matched) / static_cast<double>(report.total);
  }
  return report;
}

}  // namespace termdata
