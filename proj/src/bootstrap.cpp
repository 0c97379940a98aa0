#include "termdata/bootstrap.hpp"

#include "termdata/errors.hpp"
#include "termdata/rng.hpp"
#include "termdata/workers.hpp"

namespace termdata {

SignificanceReport paired_bootstrap(const std::vector<TokenSeq>& hyps_a,
                                    const std::vector<TokenSeq>& hyps_b,
                                    const std::vector<TokenSeq>& references,
                                    const BootstrapConfig& config) {
  if (hyps_a.size() != references.size() || hyps_b.size() != references.size()) {
    throw InputError("bootstrap inputs disagree: " + std::to_string(hyps_a.size()) + " / " +
                     std::to_string(hyps_b.size()) + " hypotheses vs " +
                     std::to_string(references.size()) + " references");
  }
  if (references.empty()) throw InputError("bootstrap requires a non-empty corpus");
  if (config.replicates == 0) throw InputError("bootstrap requires replicates >= 1");

  const std::size_t n = references.size();
  std::vector<BleuStats> stats_a, stats_b;
  stats_a.reserve(n);
  stats_b.reserve(n);
  BleuStats full_a(config.bleu.max_n), full_b(config.bleu.max_n);
  for (std::size_t s = 0; s < n; ++s) {
    stats_a.push_back(sentence_bleu_stats(hyps_a[s], references[s], config.bleu));
    stats_b.push_back(sentence_bleu_stats(hyps_b[s], references[s], config.bleu));
    full_a.accumulate(stats_a.back());
    full_b.accumulate(stats_b.back());
  }

  SignificanceReport report;
  report.replicates = config.replicates;
  report.seed = config.seed;
  report.bleu_a = bleu_from_stats(full_a, config.bleu).score;
  report.bleu_b = bleu_from_stats(full_b, config.bleu).score;
  const double full_delta = report.bleu_a - report.bleu_b;

  std::vector<double> deltas(config.replicates);
  for_each_chunk(config.replicates, 64, config.workers,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t r = begin; r < end; ++r) {
                     Rng rng(config.seed, r);
                     BleuStats resample_a(config.bleu.max_n), resample_b(config.bleu.max_n);
                     for (std::size_t draw = 0; draw < n; ++draw) {
                       const std::size_t s = static_cast<std::size_t>(rng.next_below(n));
                       resample_a.accumulate(stats_a[s]);
                       resample_b.accumulate(stats_b[s]);
                     }
                     deltas[r] = bleu_from_stats(resample_a, config.bleu).score -
                                 bleu_from_stats(resample_b, config.bleu).score;
                   }
                 });

  std::size_t wins_a = 0, wins_b = 0, ties = 0, against = 0;
  for (const double delta : deltas) {
    if (delta > 0.0) {
      ++wins_a;
    } else if (delta < 0.0) {
      ++wins_b;
    } else {
      ++ties;
    }
    if (full_delta > 0.0) {
      if (delta <= 0.0) ++against;
    } else if (full_delta < 0.0) {
      if (delta >= 0.0) ++against;
    } else {
      ++against;  // zero observed difference: every replicate ties or contradicts
    }
  }
  const double r = static_cast<double>(config.replicates);
  report.wins_a = static_cast<double>(wins_a) / r;
  report.wins_b = static_cast<double>(wins_b) / r;
  report.ties = static_cast<double>(ties) / r;
  report.p_value = static_cast<double>(against) / r;
  return report;
}

}  // namespace termdata
