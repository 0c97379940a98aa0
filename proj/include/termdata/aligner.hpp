#ifndef TERMDATA_ALIGNER_HPP
#define TERMDATA_ALIGNER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "termdata/alignment.hpp"
#include "termdata/corpus.hpp"
#include "termdata/morph.hpp"
#include "termdata/ttable.hpp"

namespace termdata {

inline constexpr const char* kNullWord = "<NULL>";

// Corpus integerized for alignment training. The direction is fixed: the
// conditioning side e is the source (inflected forms, plus NULL at id 0),
// the output side f is the target, substituted by its lemmas when a morph
// layer is supplied. This way every target lemma gets at most one source
// link, which is what per-target-lemma annotation extraction needs.
struct AlignerCorpus {
  Vocab source_vocab;  // id 0 = NULL
  Vocab target_vocab;
  std::vector<std::vector<int>> source;
  std::vector<std::vector<int>> target;

  std::size_t size() const { return source.size(); }
};

AlignerCorpus build_aligner_corpus(const ParallelCorpus& corpus,
                                   const MorphLayer* target_lemmas = nullptr);

// Iteration diagnostics. Log-likelihoods are recorded during each E-step,
// i.e. entry k is the likelihood of the parameters produced by step k-1
// (uniform initialization for k = 0); EM makes the sequence non-decreasing.
struct TrainLog {
  std::vector<double> model1_loglik;
  std::vector<double> diagonal_loglik;
  std::vector<double> tension_path;
};

struct DiagonalConfig {
  int iterations = 5;
  double initial_tension = 4.0;
  double null_prob = 0.08;
  int tension_steps = 8;  // bisection steps for the lambda search; 0 disables
  double smoothing_alpha = 0.01;
};

struct DiagonalAlignmentModel {
  Vocab source_vocab;
  Vocab target_vocab;
  TranslationTable table;
  double tension = 4.0;
  double null_prob = 0.08;
  std::string direction = "target|source";  // output side | conditioning side
};

// --- distortion distribution ---------------------------------------------
// delta(0|i,m,n) = null_prob; for j in [1,n]
// delta(j|i,m,n) = (1 - null_prob) * exp(tension * h(i,j,m,n)) / Z
// with h(i,j,m,n) = -|i/m - j/n|, i the 1-based output position, m the
// output length, j the 1-based conditioning position, n its length.

inline double diagonal_feature(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
  const double d = static_cast<double>(i) / static_cast<double>(m) -
                   static_cast<double>(j) / static_cast<double>(n);
  return d < 0 ? d : -d;
}

// Z(i,m,n) = sum_j exp(tension * h(i,j,m,n))
double diagonal_z(std::size_t i, std::size_t m, std::size_t n, double tension);

// d/d(tension) log Z, i.e. the distortion-model expectation of h at (i,m,n).
double diagonal_dlogz(std::size_t i, std::size_t m, std::size_t n, double tension);

// delta(j|i,m,n); j = 0 selects NULL.
double diagonal_prob(std::size_t j, std::size_t i, std::size_t m, std::size_t n, double tension,
                     double null_prob);

// --- training -------------------------------------------------------------

// IBM Model 1 EM from uniform initialization; the conditioning side includes
// NULL and distortion is uniform over the n+1 choices. Counts reduce in fixed
// chunk order, so results are bit-identical for any worker count.
TranslationTable train_model1(const AlignerCorpus& corpus, int iterations, unsigned workers = 1,
                              TrainLog* log = nullptr);

// Diagonal-reparameterized Model 2 EM. Starts from `init` when given (the
// usual pipeline trains Model 1 first), otherwise from uniform. After each
// EM iteration the tension is re-fit over [0.1, 14] by bisection on the
// derivative of the expected complete-data log-likelihood.
DiagonalAlignmentModel train_diagonal(const AlignerCorpus& corpus, const DiagonalConfig& config,
                                      const TranslationTable* init = nullptr,
                                      unsigned workers = 1, TrainLog* log = nullptr);

// --- inference -------------------------------------------------------------

// Per-output-token argmax of t(f_i|e_j) * delta(j|i,m,n). NULL choices yield
// no link. Unseen pairs score at a 1e-9 floor (inference only); an output
// token type absent from training aligns to NULL. Ties go to the candidate
// closest to the diagonal, then to the smaller j.
AlignmentLinks viterbi_align(const DiagonalAlignmentModel& model, const TokenSeq& source_forms,
                             const TokenSeq& output_tokens);

// Convenience overload substituting target lemmas from a morph row.
AlignmentLinks viterbi_align(const DiagonalAlignmentModel& model, const SentencePair& pair,
                             const MorphSentence* target_morph);

// Sum over sentences of log sum-over-alignments probability under the model.
// Unseen pairs contribute zero probability unless floor_unseen applies the
// inference floor. Empty corpus -> 0.
double corpus_loglikelihood(const DiagonalAlignmentModel& model, const ParallelCorpus& corpus,
                            const MorphLayer* target_lemmas = nullptr,
                            bool floor_unseen = false);

// Versioned TSV checkpoint: a header line carrying lambda and p0, then
// e<TAB>f<TAB>prob rows sorted by (e, f) word strings. Byte-deterministic.
void write_alignment_model(const DiagonalAlignmentModel& model, const std::string& path);
DiagonalAlignmentModel read_alignment_model(const std::string& path);

}  // namespace termdata

#endif  // TERMDATA_ALIGNER_HPP
