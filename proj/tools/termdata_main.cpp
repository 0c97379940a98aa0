#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "termdata/aligner.hpp"
#include "termdata/alignment.hpp"
#include "termdata/annotate.hpp"
#include "termdata/bleu.hpp"
#include "termdata/bootstrap.hpp"
#include "termdata/corpus.hpp"
#include "termdata/errors.hpp"
#include "termdata/glossary.hpp"
#include "termdata/json_writer.hpp"
#include "termdata/kappa.hpp"
#include "termdata/lemmatizer.hpp"
#include "termdata/morph.hpp"
#include "termdata/novelty.hpp"
#include "termdata/term_accuracy.hpp"
#include "termdata/text.hpp"

namespace {

using namespace termdata;

constexpr int kSchemaVersion = 1;

// Randomized subcommands refuse to run without an explicit seed; "auto"
// draws one and logs it so the run stays reproducible after the fact.
std::uint64_t resolve_seed(const std::string& seed_text) {
  if (seed_text.empty()) {
    throw InputError("a seed is required: pass --seed <uint64> or --seed auto");
  }
  if (seed_text == "auto") {
    std::random_device rd;
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cerr << "seed auto: using " << seed << "\n";
    return seed;
  }
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(seed_text, &used);
    if (used != seed_text.size()) throw std::invalid_argument(seed_text);
    return seed;
  } catch (const std::exception&) {
    throw InputError("bad --seed value '" + seed_text + "' (expected uint64 or 'auto')");
  }
}

std::vector<TokenSeq> load_tokenized_lines(const std::string& path) {
  std::vector<TokenSeq> out;
  for (const auto& line : read_lines(path)) out.push_back(split_ws(line));
  return out;
}

void write_report(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open report file: " + out_path);
  out << text;
}

std::set<std::string> parse_pos_list(const std::string& csv) {
  std::set<std::string> out;
  for (const auto& item : split_char(csv, ',')) {
    const auto tag = trim(item);
    if (tag.empty()) continue;
    if (!is_upos(std::string(tag))) {
      throw InputError("unknown UPOS tag '" + std::string(tag) + "' in --pos");
    }
    out.insert(std::string(tag));
  }
  if (out.empty()) throw InputError("--pos must name at least one UPOS tag");
  return out;
}

// --- align ------------------------------------------------------------------

struct AlignArgs {
  std::string src, tgt, tgt_conllu, out_links, out_model;
  int iters_m1 = 5;
  int iters_diag = 5;
  double p0 = 0.08;
  double tension = 4.0;
  int tension_steps = 8;
  double alpha = 0.01;
  unsigned workers = 1;
};

int run_align(const AlignArgs& args) {
  ParallelCorpus corpus = load_parallel_corpus(args.src, args.tgt);
  std::optional<MorphLayer> morph;
  if (!args.tgt_conllu.empty()) {
    morph = load_conllu_morph(args.tgt_conllu);
    attach_morph(corpus, *morph, Side::Target);  // validates; result unused
  }
  const AlignerCorpus data = build_aligner_corpus(corpus, morph ? &*morph : nullptr);
  TrainLog log;
  const TranslationTable m1 = train_model1(data, args.iters_m1, args.workers, &log);
  DiagonalConfig config;
  config.iterations = args.iters_diag;
  config.initial_tension = args.tension;
  config.null_prob = args.p0;
  config.tension_steps = args.tension_steps;
  config.smoothing_alpha = args.alpha;
  const DiagonalAlignmentModel model =
      train_diagonal(data, config, &m1, args.workers, &log);
  for (std::size_t i = 0; i < log.model1_loglik.size(); ++i) {
    std::cerr << "model1 iter " << (i + 1) << " loglik " << log.model1_loglik[i] << "\n";
  }
  for (std::size_t i = 0; i < log.diagonal_loglik.size(); ++i) {
    std::cerr << "diag iter " << (i + 1) << " loglik " << log.diagonal_loglik[i];
    if (i < log.tension_path.size()) std::cerr << " tension " << log.tension_path[i];
    std::cerr << "\n";
  }
  std::vector<AlignmentLinks> links;
  links.reserve(corpus.size());
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    links.push_back(viterbi_align(model, corpus[s], morph ? &(*morph)[s] : nullptr));
  }
  write_alignments(args.out_links, links);
  if (!args.out_model.empty()) write_alignment_model(model, args.out_model);
  std::cerr << "aligned " << corpus.size() << " sentences (tension " << model.tension << ")\n";
  return 0;
}

// --- annotate-train ---------------------------------------------------------

struct AnnotateTrainArgs {
  std::string mode = "tla";
  std::string src, tgt, links, tgt_conllu, out_prefix;
  std::string seed_text;
  double lo = 0.6;
  double hi = 1.0;
  std::string pos = "NOUN,VERB";
  bool drop_unannotated = false;
  std::string format = "inline";
  unsigned workers = 1;
};

int run_annotate_train(const AnnotateTrainArgs& args) {
  ParallelCorpus corpus = load_parallel_corpus(args.src, args.tgt);
  AnnotatedCorpus annotated =
      attach_morph(std::move(corpus), load_conllu_morph(args.tgt_conllu), Side::Target);
  const auto alignments = load_alignments(args.links);

  SamplingPolicy policy;
  policy.threshold_lo = args.lo;
  policy.threshold_hi = args.hi;
  policy.master_seed = resolve_seed(args.seed_text);
  policy.eligible_upos = parse_pos_list(args.pos);

  MixConfig mix;
  mix.drop_unannotated = args.drop_unannotated;
  mix.format = args.format == "parallel" ? FactoredFormat::Parallel : FactoredFormat::Inline;
  mix.workers = args.workers;

  const std::string src_path = args.out_prefix + ".src";
  const std::string tgt_path = args.out_prefix + ".tgt";
  const std::string factors_path = args.out_prefix + ".factors";
  std::ofstream src_out(src_path, std::ios::binary);
  std::ofstream tgt_out(tgt_path, std::ios::binary);
  if (!src_out || !tgt_out) {
    throw InputError("cannot open output files under prefix " + args.out_prefix);
  }
  std::ofstream factors_out;
  if (mix.format == FactoredFormat::Parallel) {
    factors_out.open(factors_path, std::ios::binary);
    if (!factors_out) throw InputError("cannot open " + factors_path);
  }
  const AnnotationMode mode = args.mode == "eta" ? AnnotationMode::Eta : AnnotationMode::Tla;
  const TrainingSetStats stats = build_training_set(
      annotated, alignments, policy, mode, mix, src_out, tgt_out,
      mix.format == FactoredFormat::Parallel ? &factors_out : nullptr);
  std::cerr << "annotate-train: " << stats.input_sentences << " sentences in, "
            << stats.emitted_pairs << " pairs out (" << stats.annotated_emitted
            << " annotated, " << stats.zero_event_dropped << " zero-event copies dropped, "
            << stats.events_total << " events)\n";
  return 0;
}

// --- annotate-input ---------------------------------------------------------

struct AnnotateInputArgs {
  std::string src, glossary, src_conllu, out, expectations_out;
  std::string format = "inline";
  bool case_sensitive = false;
  bool lemma_match = false;
};

int run_annotate_input(const AnnotateInputArgs& args) {
  const auto lines = read_lines(args.src);
  const Glossary glossary = load_glossary(args.glossary);
  std::optional<MorphLayer> morph;
  if (!args.src_conllu.empty()) {
    morph = load_conllu_morph(args.src_conllu);
    if (morph->size() != lines.size()) {
      throw InputError("--src-conllu has " + std::to_string(morph->size()) +
                       " sentences, input has " + std::to_string(lines.size()) + " lines");
    }
  }
  MatchOptions options;
  options.case_insensitive = !args.case_sensitive;
  options.lemma_match = args.lemma_match;

  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw InputError("cannot open " + args.out);
  std::ofstream factors_out;
  const bool parallel = args.format == "parallel";
  if (parallel) {
    factors_out.open(args.out + ".factors", std::ios::binary);
    if (!factors_out) throw InputError("cannot open " + args.out + ".factors");
  }
  std::vector<TermExpectation> expectations;
  std::size_t events = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const TokenSeq tokens = split_ws(lines[i]);
    const AnnotatedInput result = annotate_inference_input(
        tokens, glossary, morph ? &(*morph)[i] : nullptr, options, i);
    if (parallel) {
      const auto rendered = serialize_factored_parallel(result.sentence);
      out << rendered.tokens << '\n';
      factors_out << rendered.factors << '\n';
    } else {
      out << serialize_factored_inline(result.sentence) << '\n';
    }
    events += result.expectations.size();
    expectations.insert(expectations.end(), result.expectations.begin(),
                        result.expectations.end());
  }
  if (!out || (parallel && !factors_out)) throw InputError("write failed: " + args.out);
  if (!args.expectations_out.empty()) write_expectations(args.expectations_out, expectations);
  std::cerr << "annotate-input: " << lines.size() << " sentences, " << events
            << " glossary events\n";
  return 0;
}

// --- eval -------------------------------------------------------------------

struct EvalCommonArgs {
  bool json = false;
  std::string out;
};

struct EvalBleuArgs : EvalCommonArgs {
  std::string hyp, ref;
  bool lowercase = false;
  std::string smoothing = "none";
};

int run_eval_bleu(const EvalBleuArgs& args) {
  BleuConfig config;
  config.lowercase = args.lowercase;
  config.smooth_epsilon = args.smoothing == "epsilon";
  const BleuScore score =
      corpus_bleu(load_tokenized_lines(args.hyp), load_tokenized_lines(args.ref), config);
  if (args.json) {
    JsonWriter w;
    w.begin_object();
    w.kv("schema_version", kSchemaVersion);
    w.kv("report", "bleu");
    w.key("config").begin_object();
    w.kv("hyp", args.hyp).kv("ref", args.ref);
    w.kv("lowercase", config.lowercase).kv("smoothing", args.smoothing);
    w.kv("max_n", config.max_n);
    w.end_object();
    w.kv("score", score.score);
    w.key("precisions").begin_array();
    for (double p : score.precisions) w.value(p);
    w.end_array();
    w.kv("brevity_penalty", score.brevity_penalty);
    w.kv("hypothesis_length", score.hypothesis_length);
    w.kv("reference_length", score.reference_length);
    w.end_object();
    write_report(args.out, w.str());
  } else {
    char buf[256];
    std::string text;
    std::snprintf(buf, sizeof(buf), "BLEU = %.2f", 100.0 * score.score);
    text += buf;
    for (std::size_t n = 0; n < score.precisions.size(); ++n) {
      std::snprintf(buf, sizeof(buf), "%s%.1f", n == 0 ? ", " : "/",
                    100.0 * score.precisions[n]);
      text += buf;
    }
    std::snprintf(buf, sizeof(buf), " (BP = %.3f, hyp_len = %lld, ref_len = %lld)\n",
                  score.brevity_penalty, static_cast<long long>(score.hypothesis_length),
                  static_cast<long long>(score.reference_length));
    text += buf;
    write_report(args.out, text);
  }
  return 0;
}

struct EvalBootstrapArgs : EvalCommonArgs {
  std::string hyp_a, hyp_b, ref;
  std::string seed_text;
  std::size_t replicates = 1000;
  bool lowercase = false;
  std::string smoothing = "none";
  unsigned workers = 1;
};

int run_eval_bootstrap(const EvalBootstrapArgs& args) {
  BootstrapConfig config;
  config.replicates = args.replicates;
  config.seed = resolve_seed(args.seed_text);
  config.bleu.lowercase = args.lowercase;
  config.bleu.smooth_epsilon = args.smoothing == "epsilon";
  config.workers = args.workers;
  const SignificanceReport report =
      paired_bootstrap(load_tokenized_lines(args.hyp_a), load_tokenized_lines(args.hyp_b),
                       load_tokenized_lines(args.ref), config);
  if (args.json) {
    JsonWriter w;
    w.begin_object();
    w.kv("schema_version", kSchemaVersion);
    w.kv("report", "bootstrap");
    w.key("config").begin_object();
    w.kv("hyp_a", args.hyp_a).kv("hyp_b", args.hyp_b).kv("ref", args.ref);
    w.kv("replicates", report.replicates).kv("seed", report.seed);
    w.kv("lowercase", config.bleu.lowercase).kv("smoothing", args.smoothing);
    w.end_object();
    w.kv("bleu_a", report.bleu_a);
    w.kv("bleu_b", report.bleu_b);
    w.kv("delta", report.bleu_a - report.bleu_b);
    w.kv("wins_a", report.wins_a);
    w.kv("wins_b", report.wins_b);
    w.kv("ties", report.ties);
    w.kv("p_value", report.p_value);
    w.end_object();
    write_report(args.out, w.str());
  } else {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "BLEU A = %.2f, BLEU B = %.2f, delta = %+.2f\n"
                  "wins A = %.3f, wins B = %.3f, ties = %.3f\n"
                  "p_value = %.6f (replicates = %zu, seed = %llu)\n",
                  100.0 * report.bleu_a, 100.0 * report.bleu_b,
                  100.0 * (report.bleu_a - report.bleu_b), report.wins_a, report.wins_b,
                  report.ties, report.p_value, report.replicates,
                  static_cast<unsigned long long>(report.seed));
    write_report(args.out, buf);
  }
  return 0;
}

struct EvalTermsArgs : EvalCommonArgs {
  std::string hyp_conllu, hyp, lemma_table, expectations;
  bool case_sensitive = false;
};

int run_eval_terms(const EvalTermsArgs& args) {
  std::vector<TokenSeq> lemmas;
  if (!args.hyp_conllu.empty()) {
    const MorphLayer layer = load_conllu_morph(args.hyp_conllu);
    for (const auto& sentence : layer.sentences()) {
      TokenSeq row;
      row.reserve(sentence.size());
      for (const auto& mt : sentence) row.push_back(mt.lemma);
      lemmas.push_back(std::move(row));
    }
  } else if (!args.hyp.empty() && !args.lemma_table.empty()) {
    const LookupLemmatizer lemmatizer = build_lookup({args.lemma_table});
    for (const auto& tokens : load_tokenized_lines(args.hyp)) {
      TokenSeq row;
      row.reserve(tokens.size());
      for (const auto& mt : lemmatizer.lemmatize(tokens)) row.push_back(mt.lemma);
      lemmas.push_back(std::move(row));
    }
  } else {
    throw InputError("eval terms needs --hyp-conllu, or --hyp together with --lemma-table");
  }
  TermAccuracyOptions options;
  options.case_insensitive = !args.case_sensitive;
  const TermAccuracyReport report =
      term_accuracy(lemmas, load_expectations(args.expectations), options);
  if (args.json) {
    JsonWriter w;
    w.begin_object();
    w.kv("schema_version", kSchemaVersion);
    w.kv("report", "term_accuracy");
    w.key("config").begin_object();
    w.kv("expectations", args.expectations);
    w.kv("case_insensitive", options.case_insensitive);
    w.end_object();
    w.kv("total", report.total);
    w.kv("matched", report.matched);
    w.key("accuracy_percent");
    if (report.accuracy_percent) {
      w.value(*report.accuracy_percent);
    } else {
      w.null();
    }
    w.key("details").begin_array();
    for (const auto& judgment : report.details) {
      w.begin_object();
      w.kv("sentence", judgment.sentence_index);
      w.kv("expected", join(judgment.expected, " "));
      w.kv("source_term", judgment.source_term);
      w.kv("matched", judgment.matched);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    write_report(args.out, w.str());
  } else {
    std::string text;
    if (report.accuracy_percent) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "term accuracy = %.2f%% (%zu/%zu matched)\n",
                    *report.accuracy_percent, report.matched, report.total);
      text += buf;
    } else {
      text += "term accuracy undefined: no term occurrences\n";
    }
    for (const auto& judgment : report.details) {
      text += std::to_string(judgment.sentence_index) + "\t" + join(judgment.expected, " ") +
              "\t" + (judgment.matched ? "matched" : "missing") + "\n";
    }
    write_report(args.out, text);
  }
  return 0;
}

struct EvalKappaArgs : EvalCommonArgs {
  std::string judgments;
};

int run_eval_kappa(const EvalKappaArgs& args) {
  const JudgmentMatrix matrix = load_judgments(args.judgments);
  const double kappa = free_marginal_kappa(matrix);
  if (args.json) {
    JsonWriter w;
    w.begin_object();
    w.kv("schema_version", kSchemaVersion);
    w.kv("report", "kappa");
    w.key("config").begin_object();
    w.kv("judgments", args.judgments);
    w.end_object();
    w.kv("kappa_free", kappa);
    w.kv("items", matrix.items.size());
    w.kv("raters", matrix.items.empty() ? 0 : matrix.items[0].size());
    w.kv("categories", matrix.categories.size());
    w.end_object();
    write_report(args.out, w.str());
  } else {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "kappa_free = %.6f (items = %zu, raters = %zu, categories = %zu)\n",
                  kappa, matrix.items.size(), matrix.items.empty() ? 0 : matrix.items[0].size(),
                  matrix.categories.size());
    write_report(args.out, buf);
  }
  return 0;
}

struct EvalNoveltyArgs : EvalCommonArgs {
  std::string hyp, train_src, train_tgt;
  bool lowercase = false;
};

int run_eval_novelty(const EvalNoveltyArgs& args) {
  NoveltyOptions options;
  options.lowercase = args.lowercase;
  const NoveltyReport report = novel_wordforms(load_tokenized_lines(args.hyp), args.train_src,
                                               args.train_tgt, options);
  if (args.json) {
    JsonWriter w;
    w.begin_object();
    w.kv("schema_version", kSchemaVersion);
    w.kv("report", "novelty");
    w.key("config").begin_object();
    w.kv("hyp", args.hyp).kv("train_src", args.train_src).kv("train_tgt", args.train_tgt);
    w.kv("lowercase", options.lowercase);
    w.end_object();
    w.kv("hypothesis_types", report.hypothesis_types);
    w.kv("novel_types", report.forms.size());
    w.kv("novel_tokens", report.novel_tokens);
    w.key("forms").begin_array();
    for (const auto& form : report.forms) {
      w.begin_object();
      w.kv("form", form.form);
      w.kv("frequency", form.frequency);
      w.key("examples").begin_array();
      for (std::size_t s : form.example_sentences) w.value(s);
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
    write_report(args.out, w.str());
  } else {
    std::string text = std::to_string(report.forms.size()) + " novel wordform types (" +
                       std::to_string(report.novel_tokens) + " tokens) among " +
                       std::to_string(report.hypothesis_types) + " hypothesis types\n";
    for (const auto& form : report.forms) {
      text += form.form + "\t" + std::to_string(form.frequency) + "\tsentences";
      for (std::size_t s : form.example_sentences) text += " " + std::to_string(s);
      text += "\n";
    }
    write_report(args.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terminology-aware NMT data preparation and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags take precedence");

  AlignArgs align_args;
  auto* align = app.add_subcommand("align", "train a lemma-to-source word aligner and emit links");
  align->add_option("--src", align_args.src, "source-side text, one sentence per line")
      ->required()
      ->envname("TERMDATA_ALIGN_SRC");
  align->add_option("--tgt", align_args.tgt, "target-side text")
      ->required()
      ->envname("TERMDATA_ALIGN_TGT");
  align->add_option("--tgt-conllu", align_args.tgt_conllu,
                    "CoNLL-U for the target side; aligns its lemmas instead of surface forms")
      ->envname("TERMDATA_ALIGN_TGT_CONLLU");
  align->add_option("--iters-m1", align_args.iters_m1, "Model 1 EM iterations")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_ITERS_M1");
  align->add_option("--iters-diag", align_args.iters_diag, "diagonal-model EM iterations")
      ->check(CLI::Range(0, 1000))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_ITERS_DIAG");
  align->add_option("--p0", align_args.p0, "null-alignment probability")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_P0");
  align->add_option("--tension", align_args.tension, "initial diagonal tension")
      ->check(CLI::Range(0.0, 14.0))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_TENSION");
  align->add_option("--tension-steps", align_args.tension_steps,
                    "bisection steps for the per-iteration tension fit (0 disables)")
      ->check(CLI::Range(0, 64))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_TENSION_STEPS");
  align->add_option("--alpha", align_args.alpha, "add-alpha smoothing for count normalization")
      ->check(CLI::Range(0.0, 10.0))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_ALPHA");
  align->add_option("--out-links", align_args.out_links, "Pharaoh alignment output")
      ->required()
      ->envname("TERMDATA_ALIGN_OUT_LINKS");
  align->add_option("--out-model", align_args.out_model, "model checkpoint output (TSV)")
      ->envname("TERMDATA_ALIGN_OUT_MODEL");
  align->add_option("--workers", align_args.workers, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str()
      ->envname("TERMDATA_ALIGN_WORKERS");

  AnnotateTrainArgs train_args;
  auto* annotate_train =
      app.add_subcommand("annotate-train", "build 1:1 factored training data (TLA or ETA)");
  annotate_train->add_option("--mode", train_args.mode, "tla = target lemmas, eta = exact forms")
      ->check(CLI::IsMember({"tla", "eta"}))
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_MODE");
  annotate_train->add_option("--src", train_args.src, "source-side text")
      ->required()
      ->envname("TERMDATA_TRAIN_SRC");
  annotate_train->add_option("--tgt", train_args.tgt, "target-side text")
      ->required()
      ->envname("TERMDATA_TRAIN_TGT");
  annotate_train->add_option("--links", train_args.links, "Pharaoh alignments for the corpus")
      ->required()
      ->envname("TERMDATA_TRAIN_LINKS");
  annotate_train->add_option("--tgt-conllu", train_args.tgt_conllu, "target-side CoNLL-U")
      ->required()
      ->envname("TERMDATA_TRAIN_TGT_CONLLU");
  annotate_train->add_option("--seed", train_args.seed_text, "sampling seed (uint64 or 'auto')")
      ->envname("TERMDATA_TRAIN_SEED");
  annotate_train->add_option("--lo", train_args.lo, "threshold interval lower bound")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_LO");
  annotate_train->add_option("--hi", train_args.hi, "threshold interval upper bound")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_HI");
  annotate_train->add_option("--pos", train_args.pos, "eligible UPOS tags, comma-separated")
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_POS");
  annotate_train->add_flag("--drop-unannotated", train_args.drop_unannotated,
                           "omit annotated copies that received zero events")
      ->envname("TERMDATA_TRAIN_DROP_UNANNOTATED");
  annotate_train->add_option("--format", train_args.format, "factored output format")
      ->check(CLI::IsMember({"inline", "parallel"}))
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_FORMAT");
  annotate_train->add_option("--out-prefix", train_args.out_prefix,
                             "writes <prefix>.src, <prefix>.tgt (+ <prefix>.factors)")
      ->required()
      ->envname("TERMDATA_TRAIN_OUT_PREFIX");
  annotate_train->add_option("--workers", train_args.workers, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str()
      ->envname("TERMDATA_TRAIN_WORKERS");

  AnnotateInputArgs input_args;
  auto* annotate_input =
      app.add_subcommand("annotate-input", "annotate inference input from a glossary");
  annotate_input->add_option("--src", input_args.src, "input text, one sentence per line")
      ->required()
      ->envname("TERMDATA_INPUT_SRC");
  annotate_input->add_option("--glossary", input_args.glossary, "TSV glossary")
      ->required()
      ->envname("TERMDATA_INPUT_GLOSSARY");
  annotate_input->add_option("--src-conllu", input_args.src_conllu,
                             "CoNLL-U for the input; enables --lemma-match")
      ->envname("TERMDATA_INPUT_SRC_CONLLU");
  annotate_input->add_flag("--case-sensitive", input_args.case_sensitive,
                           "match glossary terms case-sensitively")
      ->envname("TERMDATA_INPUT_CASE_SENSITIVE");
  annotate_input->add_flag("--lemma-match", input_args.lemma_match,
                           "match glossary terms against source lemmas")
      ->envname("TERMDATA_INPUT_LEMMA_MATCH");
  annotate_input->add_option("--format", input_args.format, "factored output format")
      ->check(CLI::IsMember({"inline", "parallel"}))
      ->capture_default_str()
      ->envname("TERMDATA_INPUT_FORMAT");
  annotate_input->add_option("--out", input_args.out, "factored output file")
      ->required()
      ->envname("TERMDATA_INPUT_OUT");
  annotate_input->add_option("--expectations-out", input_args.expectations_out,
                             "TSV of expected target lemmas per event")
      ->envname("TERMDATA_INPUT_EXPECTATIONS_OUT");

  auto* eval = app.add_subcommand("eval", "evaluation metrics");
  eval->require_subcommand(1);

  EvalBleuArgs bleu_args;
  auto* eval_bleu = eval->add_subcommand("bleu", "corpus BLEU");
  eval_bleu->add_option("--hyp", bleu_args.hyp, "hypothesis file")
      ->required()
      ->envname("TERMDATA_BLEU_HYP");
  eval_bleu->add_option("--ref", bleu_args.ref, "reference file")
      ->required()
      ->envname("TERMDATA_BLEU_REF");
  eval_bleu->add_flag("--lowercase", bleu_args.lowercase, "case-insensitive BLEU")
      ->envname("TERMDATA_BLEU_LOWERCASE");
  eval_bleu->add_option("--smoothing", bleu_args.smoothing, "zero-precision handling")
      ->check(CLI::IsMember({"none", "epsilon"}))
      ->capture_default_str()
      ->envname("TERMDATA_BLEU_SMOOTHING");
  eval_bleu->add_flag("--json", bleu_args.json, "emit a JSON report");
  eval_bleu->add_option("--out", bleu_args.out, "report file (default stdout)");

  EvalBootstrapArgs boot_args;
  auto* eval_boot = eval->add_subcommand("bootstrap", "pairwise bootstrap significance");
  eval_boot->add_option("--hyp-a", boot_args.hyp_a, "system A hypotheses")
      ->required()
      ->envname("TERMDATA_BOOTSTRAP_HYP_A");
  eval_boot->add_option("--hyp-b", boot_args.hyp_b, "system B hypotheses")
      ->required()
      ->envname("TERMDATA_BOOTSTRAP_HYP_B");
  eval_boot->add_option("--ref", boot_args.ref, "reference file")
      ->required()
      ->envname("TERMDATA_BOOTSTRAP_REF");
  eval_boot->add_option("--replicates", boot_args.replicates, "bootstrap replicates")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}))
      ->capture_default_str()
      ->envname("TERMDATA_BOOTSTRAP_REPLICATES");
  eval_boot->add_option("--seed", boot_args.seed_text, "resampling seed (uint64 or 'auto')")
      ->envname("TERMDATA_BOOTSTRAP_SEED");
  eval_boot->add_flag("--lowercase", boot_args.lowercase, "case-insensitive BLEU")
      ->envname("TERMDATA_BOOTSTRAP_LOWERCASE");
  eval_boot->add_option("--smoothing", boot_args.smoothing, "zero-precision handling")
      ->check(CLI::IsMember({"none", "epsilon"}))
      ->capture_default_str()
      ->envname("TERMDATA_BOOTSTRAP_SMOOTHING");
  eval_boot->add_option("--workers", boot_args.workers, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str()
      ->envname("TERMDATA_BOOTSTRAP_WORKERS");
  eval_boot->add_flag("--json", boot_args.json, "emit a JSON report");
  eval_boot->add_option("--out", boot_args.out, "report file (default stdout)");

  EvalTermsArgs terms_args;
  auto* eval_terms = eval->add_subcommand("terms", "lemmatized term exact-match accuracy");
  eval_terms->add_option("--hyp-conllu", terms_args.hyp_conllu,
                         "CoNLL-U of the lemmatized hypotheses")
      ->envname("TERMDATA_TERMS_HYP_CONLLU");
  eval_terms->add_option("--hyp", terms_args.hyp, "hypothesis file (with --lemma-table)")
      ->envname("TERMDATA_TERMS_HYP");
  eval_terms->add_option("--lemma-table", terms_args.lemma_table,
                         "lemma lookup table (TSV or CoNLL-U) for --hyp")
      ->envname("TERMDATA_TERMS_LEMMA_TABLE");
  eval_terms->add_option("--expectations", terms_args.expectations, "expectations TSV")
      ->required()
      ->envname("TERMDATA_TERMS_EXPECTATIONS");
  eval_terms->add_flag("--case-sensitive", terms_args.case_sensitive, "match case-sensitively")
      ->envname("TERMDATA_TERMS_CASE_SENSITIVE");
  eval_terms->add_flag("--json", terms_args.json, "emit a JSON report");
  eval_terms->add_option("--out", terms_args.out, "report file (default stdout)");

  EvalKappaArgs kappa_args;
  auto* eval_kappa = eval->add_subcommand("kappa", "free-marginal kappa for judgment files");
  eval_kappa->add_option("--judgments", kappa_args.judgments, "judgment TSV")
      ->required()
      ->envname("TERMDATA_KAPPA_JUDGMENTS");
  eval_kappa->add_flag("--json", kappa_args.json, "emit a JSON report");
  eval_kappa->add_option("--out", kappa_args.out, "report file (default stdout)");

  EvalNoveltyArgs novelty_args;
  auto* eval_novelty = eval->add_subcommand("novelty", "novel-wordform productivity report");
  eval_novelty->add_option("--hyp", novelty_args.hyp, "hypothesis file")
      ->required()
      ->envname("TERMDATA_NOVELTY_HYP");
  eval_novelty->add_option("--train-src", novelty_args.train_src, "training source text")
      ->required()
      ->envname("TERMDATA_NOVELTY_TRAIN_SRC");
  eval_novelty->add_option("--train-tgt", novelty_args.train_tgt, "training target text")
      ->required()
      ->envname("TERMDATA_NOVELTY_TRAIN_TGT");
  eval_novelty->add_flag("--lowercase", novelty_args.lowercase, "fold case before comparing")
      ->envname("TERMDATA_NOVELTY_LOWERCASE");
  eval_novelty->add_flag("--json", novelty_args.json, "emit a JSON report");
  eval_novelty->add_option("--out", novelty_args.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    if (align->parsed()) return run_align(align_args);
    if (annotate_train->parsed()) return run_annotate_train(train_args);
    if (annotate_input->parsed()) return run_annotate_input(input_args);
    if (eval->parsed()) {
      if (eval_bleu->parsed()) return run_eval_bleu(bleu_args);
      if (eval_boot->parsed()) return run_eval_bootstrap(boot_args);
      if (eval_terms->parsed()) return run_eval_terms(terms_args);
      if (eval_kappa->parsed()) return run_eval_kappa(kappa_args);
      if (eval_novelty->parsed()) return run_eval_novelty(novelty_args);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
