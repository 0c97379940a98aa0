#ifndef TERMDATA_BLEU_HPP
#define TERMDATA_BLEU_HPP

#include <cstdint>
#include <vector>

#include "termdata/corpus.hpp"

namespace termdata {

struct BleuConfig {
  int max_n = 4;
  bool smooth_epsilon = false;  // replace zero precisions with epsilon
  double epsilon = 1e-9;
  bool lowercase = false;
};

struct BleuScore {
  double score = 0.0;  // in [0,1]
  std::vector<double> precisions;
  double brevity_penalty = 1.0;
  std::int64_t hypothesis_length = 0;
  std::int64_t reference_length = 0;
};

// Per-sentence clipped n-gram counts; summing these over any subset of
// sentences and rescoring is what the bootstrap resampler does.
struct BleuStats {
  std::vector<std::int64_t> matched;
  std::vector<std::int64_t> total;
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  explicit BleuStats(int max_n = 4) : matched(max_n, 0), total(max_n, 0) {}
  void accumulate(const BleuStats& other);
};

BleuStats sentence_bleu_stats(const TokenSeq& hypothesis, const TokenSeq& reference,
                              const BleuConfig& config);

BleuScore bleu_from_stats(const BleuStats& stats, const BleuConfig& config);

// Corpus-level modified n-gram precision with brevity penalty
// exp(1 - r/c) for c < r. Single reference, pre-tokenized input.
BleuScore corpus_bleu(const std::vector<TokenSeq>& hypotheses,
                      const std::vector<TokenSeq>& references, const BleuConfig& config = {});

}  // namespace termdata

#endif  // TERMDATA_BLEU_HPP
