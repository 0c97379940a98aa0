#ifndef TERMDATA_BOOTSTRAP_HPP
#define TERMDATA_BOOTSTRAP_HPP

#include <cstdint>
#include <vector>

#include "termdata/bleu.hpp"
#include "termdata/corpus.hpp"

namespace termdata {

struct BootstrapConfig {
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  BleuConfig bleu;
  unsigned workers = 1;
};

struct SignificanceReport {
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double bleu_a = 0.0;  // full-corpus scores
  double bleu_b = 0.0;
  double wins_a = 0.0;  // fractions of replicates; sum to 1
  double wins_b = 0.0;
  double ties = 0.0;
  double p_value = 1.0;
};

// Pairwise bootstrap resampling: each replicate redraws N sentence indices
// with replacement (substream of (seed, replicate index)) and rescales both
// systems' BLEU from per-sentence statistics. One-sided p-value for the
// observed full-corpus difference, ties counted against significance.
// Replicates merge in index order, so reports are bit-identical for any
// worker count.
SignificanceReport paired_bootstrap(const std::vector<TokenSeq>& hyps_a,
                                    const std::vector<TokenSeq>& hyps_b,
                                    const std::vector<TokenSeq>& references,
                                    const BootstrapConfig& config);

}  // namespace termdata

#endif  // TERMDATA_BOOTSTRAP_HPP
