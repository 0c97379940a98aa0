#include "termdata/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

// n-grams keyed as tokens joined with an unprintable separator
using NgramCounts = std::unordered_map<std::string, std::int64_t>;

void count_ngrams(const TokenSeq& tokens, int n, NgramCounts& out) {
  out.clear();
  if (static_cast<std::size_t>(n) > tokens.size()) return;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++out[key];
  }
}

TokenSeq folded(const TokenSeq& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(fold_lower(t));
  return out;
}

}  // namespace

void BleuStats::accumulate(const BleuStats& other) {
  for (std::size_t n = 0; n < matched.size(); ++n) {
    matched[n] += other.matched[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
}

BleuStats sentence_bleu_stats(const TokenSeq& hypothesis, const TokenSeq& reference,
                              const BleuConfig& config) {
  const TokenSeq& hyp = config.lowercase ? folded(hypothesis) : hypothesis;
  const TokenSeq& ref = config.lowercase ? folded(reference) : reference;
  BleuStats stats(config.max_n);
  stats.hyp_len = static_cast<std::int64_t>(hyp.size());
  stats.ref_len = static_cast<std::int64_t>(ref.size());
  NgramCounts hyp_counts, ref_counts;
  for (int n = 1; n <= config.max_n; ++n) {
    count_ngrams(hyp, n, hyp_counts);
    count_ngrams(ref, n, ref_counts);
    std::int64_t matched = 0, total = 0;
    for (const auto& [gram, count] : hyp_counts) {
      total += count;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.matched[n - 1] = matched;
    stats.total[n - 1] = total;
  }
  return stats;
}

BleuScore bleu_from_stats(const BleuStats& stats, const BleuConfig& config) {
  BleuScore score;
  score.hypothesis_length = stats.hyp_len;
  score.reference_length = stats.ref_len;
  score.precisions.assign(config.max_n, 0.0);
  bool any_zero = false;
  double log_precision = 0.0;
  for (int n = 0; n < config.max_n; ++n) {
    const std::int64_t matched = stats.matched[n];
    const std::int64_t total = stats.total[n];
    double p = 0.0;
    if (matched > 0) {
      p = static_cast<double>(matched) / static_cast<double>(total);
    } else if (config.smooth_epsilon) {
      p = config.epsilon;
    }
    score.precisions[n] = p;
    if (p > 0.0) {
      log_precision += std::log(p);
    } else {
      any_zero = true;
    }
  }
  if (stats.hyp_len >= stats.ref_len) {
    score.brevity_penalty = 1.0;
  } else if (stats.hyp_len == 0) {
    score.brevity_penalty = 0.0;
  } else {
    score.brevity_penalty =
        std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));
  }
  score.score = any_zero ? 0.0
                         : score.brevity_penalty *
                               std::exp(log_precision / static_cast<double>(config.max_n));
  return score;
}

BleuScore corpus_bleu(const std::vector<TokenSeq>& hypotheses,
                      const std::vector<TokenSeq>& references, const BleuConfig& config) {
  if (hypotheses.size() != references.size()) {
    throw InputError("BLEU inputs disagree: " + std::to_string(hypotheses.size()) +
                     " hypotheses vs " + std::to_string(references.size()) + " references");
  }
  BleuStats stats(config.max_n);
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    stats.accumulate(sentence_bleu_stats(hypotheses[s], references[s], config));
  }
  return bleu_from_stats(stats, config);
}

}  // namespace termdata
