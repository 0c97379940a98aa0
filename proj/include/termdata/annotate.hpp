#ifndef TERMDATA_ANNOTATE_HPP
#define TERMDATA_ANNOTATE_HPP

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "termdata/alignment.hpp"
#include "termdata/corpus.hpp"
#include "termdata/factored.hpp"
#include "termdata/glossary.hpp"
#include "termdata/morph.hpp"

namespace termdata {

// Controls which aligned words become annotation candidates and how many of
// them are kept: one threshold tau ~ U[lo, hi) per sentence, one u ~ U[0,1)
// per candidate, keep iff u > tau. All draws come from a substream of
// (master_seed, sentence index), so selection is reproducible under any
// sharding or thread count.
struct SamplingPolicy {
  double threshold_lo = 0.6;
  double threshold_hi = 1.0;
  std::uint64_t master_seed = 0;
  std::set<std::string> eligible_upos = {"NOUN", "VERB"};
};

enum class Provenance { AlignmentSampled, GlossaryMatched };

// A resolved annotation: source span [begin, end) plus the tokens to insert
// after it. Events within one sentence must have pairwise disjoint spans.
struct AnnotationEvent {
  std::size_t sentence_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  TokenSeq annotation;
  Provenance provenance = Provenance::AlignmentSampled;
};

// A one-to-one aligned (source word, target word) pair eligible for
// annotation; carries both the lemma (TLA) and the surface form (ETA) so
// both modes share one sampled selection.
struct AnnotationCandidate {
  std::size_t source_pos = 0;
  std::size_t target_pos = 0;
  Token lemma;
  Token surface;
};

// Candidates are source positions linked one-to-one to a target position
// whose UPOS is eligible; multi-linked positions on either side never
// qualify. Ordered by source position.
std::vector<AnnotationCandidate> select_tla_candidates(const SentencePair& pair,
                                                       const AlignmentLinks& links,
                                                       const MorphSentence& target_morph,
                                                       const SamplingPolicy& policy);

// The per-sentence threshold draw followed by one u per candidate, in order.
std::vector<AnnotationCandidate> sample_annotations(
    const std::vector<AnnotationCandidate>& candidates, std::size_t sentence_index,
    const SamplingPolicy& policy);

enum class AnnotationMode { Tla, Eta };

std::vector<AnnotationEvent> events_from_candidates(
    const std::vector<AnnotationCandidate>& selected, std::size_t sentence_index,
    AnnotationMode mode);

// Marks span tokens S, inserts each event's annotation as T tokens right
// after its span, leaves the rest W. Overlapping spans are an error.
FactoredSentence apply_annotations(const TokenSeq& source,
                                   const std::vector<AnnotationEvent>& events);

struct MatchOptions {
  bool case_insensitive = true;
  bool lemma_match = false;  // match entry sources against source-side lemmas
};

// Left-to-right, longest-match-first, non-overlapping glossary matching.
// The produced events carry the entry's target lemma tokens.
std::vector<AnnotationEvent> match_glossary(const TokenSeq& sentence, const Glossary& glossary,
                                            const MorphSentence* source_morph,
                                            const MatchOptions& options,
                                            std::size_t sentence_index = 0);

// What the evaluator later checks against the system output: each glossary
// event contributes its expected target lemma sequence.
struct TermExpectation {
  std::size_t sentence_index = 0;
  TokenSeq expected_lemma_tokens;
  std::string source_term;
};

struct AnnotatedInput {
  FactoredSentence sentence;
  std::vector<TermExpectation> expectations;
};

AnnotatedInput annotate_inference_input(const TokenSeq& sentence, const Glossary& glossary,
                                        const MorphSentence* source_morph,
                                        const MatchOptions& options,
                                        std::size_t sentence_index = 0);

// TSV sidecar: sentence_index<TAB>space-joined lemma tokens<TAB>source term.
void write_expectations(const std::string& path, const std::vector<TermExpectation>& expectations);
std::vector<TermExpectation> load_expectations(const std::string& path);

// --- training data ---------------------------------------------------------

struct MixConfig {
  bool drop_unannotated = false;
  FactoredFormat format = FactoredFormat::Inline;
  unsigned workers = 1;
};

struct TrainingSetStats {
  std::size_t input_sentences = 0;
  std::size_t emitted_pairs = 0;
  std::size_t annotated_emitted = 0;
  std::size_t zero_event_dropped = 0;
  std::size_t events_total = 0;
};

// Emits the original corpus (all-W) followed by its annotated copy, giving
// the 1:1 original:annotated mix. src_out receives factored source lines,
// tgt_out the target lines; the parallel format additionally writes factor
// lines to factors_out. Output order is the input order regardless of the
// worker count.
TrainingSetStats build_training_set(const AnnotatedCorpus& annotated,
                                    const std::vector<AlignmentLinks>& alignments,
                                    const SamplingPolicy& policy, AnnotationMode mode,
                                    const MixConfig& mix, std::ostream& src_out,
                                    std::ostream& tgt_out, std::ostream* factors_out);

inline TrainingSetStats build_tla_training_set(const AnnotatedCorpus& annotated,
                                               const std::vector<AlignmentLinks>& alignments,
                                               const SamplingPolicy& policy, const MixConfig& mix,
                                               std::ostream& src_out, std::ostream& tgt_out,
                                               std::ostream* factors_out = nullptr) {
  return build_training_set(annotated, alignments, policy, AnnotationMode::Tla, mix, src_out,
                            tgt_out, factors_out);
}

inline TrainingSetStats build_eta_training_set(const AnnotatedCorpus& annotated,
                                               const std::vector<AlignmentLinks>& alignments,
                                               const SamplingPolicy& policy, const MixConfig& mix,
                                               std::ostream& src_out, std::ostream& tgt_out,
                                               std::ostream* factors_out = nullptr) {
  return build_training_set(annotated, alignments, policy, AnnotationMode::Eta, mix, src_out,
                            tgt_out, factors_out);
}

}  // namespace termdata

#endif  // TERMDATA_ANNOTATE_HPP
