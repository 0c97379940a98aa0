#include "termdata/annotate.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "termdata/errors.hpp"
#include "termdata/rng.hpp"
#include "termdata/text.hpp"
#include "termdata/workers.hpp"

namespace termdata {

namespace {

void validate_policy(const SamplingPolicy& policy) {
  if (!(policy.threshold_lo >= 0.0 && policy.threshold_lo <= policy.threshold_hi &&
        policy.threshold_hi <= 1.0)) {
    throw InputError("sampling threshold interval must satisfy 0 <= lo <= hi <= 1");
  }
  if (policy.eligible_upos.empty()) {
    throw InputError("eligible UPOS set must be non-empty");
  }
}

}  // namespace

std::vector<AnnotationCandidate> select_tla_candidates(const SentencePair& pair,
                                                       const AlignmentLinks& links,
                                                       const MorphSentence& target_morph,
                                                       const SamplingPolicy& policy) {
  validate_policy(policy);
  if (target_morph.size() != pair.target.size()) {
    throw InputError("target morph row covers " + std::to_string(target_morph.size()) +
                     " tokens, sentence " + std::to_string(pair.index) + " has " +
                     std::to_string(pair.target.size()));
  }
  std::vector<int> src_degree(pair.source.size(), 0), tgt_degree(pair.target.size(), 0);
  for (const auto& [i, j] : links) {
    if (i >= pair.source.size() || j >= pair.target.size()) {
      throw InputError("alignment link " + std::to_string(i) + "-" + std::to_string(j) +
                       " out of range at sentence " + std::to_string(pair.index));
    }
    ++src_degree[i];
    ++tgt_degree[j];
  }
  std::vector<AnnotationCandidate> candidates;
  for (const auto& [i, j] : links) {  // std::set iterates by source position
    if (src_degree[i] != 1 || tgt_degree[j] != 1) continue;
    if (!policy.eligible_upos.count(target_morph[j].upos)) continue;
    candidates.push_back(AnnotationCandidate{i, j, target_morph[j].lemma, target_morph[j].form});
  }
  return candidates;
}

std::vector<AnnotationCandidate> sample_annotations(
    const std::vector<AnnotationCandidate>& candidates, std::size_t sentence_index,
    const SamplingPolicy& policy) {
  validate_policy(policy);
  Rng rng(policy.master_seed, sentence_index);
  const double threshold = rng.next_in(policy.threshold_lo, policy.threshold_hi);
  std::vector<AnnotationCandidate> selected;
  for (const auto& candidate : candidates) {
    if (rng.next_unit() > threshold) selected.push_back(candidate);
  }
  return selected;
}

std::vector<AnnotationEvent> events_from_candidates(
    const std::vector<AnnotationCandidate>& selected, std::size_t sentence_index,
    AnnotationMode mode) {
  std::vector<AnnotationEvent> events;
  events.reserve(selected.size());
  for (const auto& candidate : selected) {
    AnnotationEvent event;
    event.sentence_index = sentence_index;
    event.begin = candidate.source_pos;
    event.end = candidate.source_pos + 1;
    event.annotation = {mode == AnnotationMode::Tla ? candidate.lemma : candidate.surface};
    event.provenance = Provenance::AlignmentSampled;
    events.push_back(std::move(event));
  }
  return events;
}

FactoredSentence apply_annotations(const TokenSeq& source,
                                   const std::vector<AnnotationEvent>& events) {
  std::vector<const AnnotationEvent*> ordered;
  ordered.reserve(events.size());
  for (const auto& event : events) ordered.push_back(&event);
  std::sort(ordered.begin(), ordered.end(),
            [](const AnnotationEvent* a, const AnnotationEvent* b) { return a->begin < b->begin; });
  std::size_t previous_end = 0;
  for (const AnnotationEvent* event : ordered) {
    if (!(event->begin < event->end && event->end <= source.size())) {
      throw InputError("annotation span [" + std::to_string(event->begin) + "," +
                       std::to_string(event->end) + ") out of range for a " +
                       std::to_string(source.size()) + "-token sentence");
    }
    if (event->begin < previous_end) {
      throw InputError("overlapping annotation spans at token " + std::to_string(event->begin));
    }
    if (event->annotation.empty()) {
      throw InputError("annotation tokens must be non-empty");
    }
    previous_end = event->end;
  }
  FactoredSentence fs;
  fs.reserve(source.size() + events.size());
  std::size_t next_event = 0;
  for (std::size_t pos = 0; pos < source.size(); ++pos) {
    const bool in_span = next_event < ordered.size() && pos >= ordered[next_event]->begin &&
                         pos < ordered[next_event]->end;
    fs.push_back(FactoredToken{source[pos], in_span ? Factor::S : Factor::W});
    if (in_span && pos + 1 == ordered[next_event]->end) {
      for (const auto& tok : ordered[next_event]->annotation) {
        fs.push_back(FactoredToken{tok, Factor::T});
      }
      ++next_event;
    }
  }
  return fs;
}

std::vector<AnnotationEvent> match_glossary(const TokenSeq& sentence, const Glossary& glossary,
                                            const MorphSentence* source_morph,
                                            const MatchOptions& options,
                                            std::size_t sentence_index) {
  const TokenSeq* view = &sentence;
  TokenSeq lemmas;
  if (options.lemma_match && source_morph) {
    if (source_morph->size() != sentence.size()) {
      throw InputError("source morph row covers " + std::to_string(source_morph->size()) +
                       " tokens, sentence has " + std::to_string(sentence.size()));
    }
    lemmas.reserve(source_morph->size());
    for (const auto& mt : *source_morph) lemmas.push_back(mt.lemma);
    view = &lemmas;
  }
  const auto candidates = glossary.find_candidates(*view, options.case_insensitive);
  std::vector<AnnotationEvent> events;
  std::size_t cursor = 0;
  for (const auto& match : candidates) {
    if (match.begin < cursor) continue;
    AnnotationEvent event;
    event.sentence_index = sentence_index;
    event.begin = match.begin;
    event.end = match.end;
    event.annotation = glossary.entries()[match.entry].target_lemma_tokens;
    event.provenance = Provenance::GlossaryMatched;
    events.push_back(std::move(event));
    cursor = match.end;
  }
  return events;
}

AnnotatedInput annotate_inference_input(const TokenSeq& sentence, const Glossary& glossary,
                                        const MorphSentence* source_morph,
                                        const MatchOptions& options, std::size_t sentence_index) {
  AnnotatedInput out;
  const auto events = match_glossary(sentence, glossary, source_morph, options, sentence_index);
  out.sentence = apply_annotations(sentence, events);
  out.expectations.reserve(events.size());
  for (const auto& event : events) {
    TermExpectation expectation;
    expectation.sentence_index = sentence_index;
    expectation.expected_lemma_tokens = event.annotation;
    TokenSeq span(sentence.begin() + static_cast<std::ptrdiff_t>(event.begin),
                  sentence.begin() + static_cast<std::ptrdiff_t>(event.end));
    expectation.source_term = join(span, " ");
    out.expectations.push_back(std::move(expectation));
  }
  return out;
}

void write_expectations(const std::string& path,
                        const std::vector<TermExpectation>& expectations) {
  std::vector<std::string> lines;
  lines.reserve(expectations.size());
  for (const auto& exp : expectations) {
    lines.push_back(std::to_string(exp.sentence_index) + "\t" +
                    join(exp.expected_lemma_tokens, " ") + "\t" + exp.source_term);
  }
  write_lines(path, lines);
}

std::vector<TermExpectation> load_expectations(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<TermExpectation> expectations;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (is_blank(lines[ln])) continue;
    const auto cols = split_char(lines[ln], '\t');
    if (cols.size() < 2) {
      throw InputError(path + ":" + std::to_string(ln + 1) +
                       ": expected sentence_index<TAB>lemma tokens[<TAB>source term]");
    }
    TermExpectation exp;
    std::size_t index = 0;
    const auto res = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), index);
    if (res.ec != std::errc() || res.ptr != cols[0].data() + cols[0].size()) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": bad sentence index '" + cols[0] +
                       "'");
    }
    exp.sentence_index = index;
    exp.expected_lemma_tokens = split_ws(cols[1]);
    if (exp.expected_lemma_tokens.empty()) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": empty lemma tokens");
    }
    if (cols.size() > 2) exp.source_term = cols[2];
    expectations.push_back(std::move(exp));
  }
  return expectations;
}

TrainingSetStats build_training_set(const AnnotatedCorpus& annotated,
                                    const std::vector<AlignmentLinks>& alignments,
                                    const SamplingPolicy& policy, AnnotationMode mode,
                                    const MixConfig& mix, std::ostream& src_out,
                                    std::ostream& tgt_out, std::ostream* factors_out) {
  validate_policy(policy);
  const ParallelCorpus& corpus = annotated.corpus;
  if (!annotated.target_morph) {
    throw InputError("training-set annotation requires an attached target morph layer");
  }
  if (alignments.size() != corpus.size()) {
    throw InputError("alignment file has " + std::to_string(alignments.size()) +
                     " sentences, corpus has " + std::to_string(corpus.size()));
  }
  if (mix.format == FactoredFormat::Parallel && !factors_out) {
    throw InputError("parallel factored output requires a factors stream");
  }
  TrainingSetStats stats;
  stats.input_sentences = corpus.size();

  auto emit = [&](const FactoredSentence& fs, const std::string& target_line) {
    if (mix.format == FactoredFormat::Inline) {
      src_out << serialize_factored_inline(fs) << '\n';
    } else {
      const auto lines = serialize_factored_parallel(fs);
      src_out << lines.tokens << '\n';
      *factors_out << lines.factors << '\n';
    }
    tgt_out << target_line << '\n';
    ++stats.emitted_pairs;
  };

  // original half: every pair, all-W
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const SentencePair& pair = corpus[s];
    FactoredSentence fs;
    fs.reserve(pair.source.size());
    for (const auto& tok : pair.source) fs.push_back(FactoredToken{tok, Factor::W});
    emit(fs, join(pair.target, " "));
  }

  // annotated half, processed in chunks but emitted in corpus order
  struct AnnotatedLine {
    FactoredSentence sentence;
    std::size_t event_count = 0;
  };
  std::vector<AnnotatedLine> produced(corpus.size());
  const MorphLayer& morph = *annotated.target_morph;
  for_each_chunk(corpus.size(), 512, mix.workers,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t s = begin; s < end; ++s) {
                     const SentencePair& pair = corpus[s];
                     const auto candidates =
                         select_tla_candidates(pair, alignments[s], morph[s], policy);
                     const auto selected = sample_annotations(candidates, pair.index, policy);
                     const auto events = events_from_candidates(selected, pair.index, mode);
                     produced[s].sentence = apply_annotations(pair.source, events);
                     produced[s].event_count = events.size();
                   }
                 });
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    stats.events_total += produced[s].event_count;
    if (mix.drop_unannotated && produced[s].event_count == 0) {
      ++stats.zero_event_dropped;
      continue;
    }
    emit(produced[s].sentence, join(corpus[s].target, " "));
    ++stats.annotated_emitted;
  }
  if (!src_out || !tgt_out || (factors_out && !*factors_out)) {
    throw InputError("write failed while emitting training set");
  }
  return stats;
}

}  // namespace termdata
