#include "termdata/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>
#include <utility>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"
#include "termdata/workers.hpp"

namespace termdata {

namespace {

constexpr std::size_t kChunkSentences = 256;
constexpr double kInferenceFloor = 1e-9;

// Expected counts gathered by one E-step chunk. Kept sparse and merged in
// chunk order so the reduction is independent of the worker count.
struct ChunkCounts {
  std::map<std::pair<int, int>, double> counts;  // (e, f) -> expected count
  double loglik = 0.0;
  double emp_feat = 0.0;  // sum of posterior-weighted h over non-NULL links
  // (m, n) -> per-output-position non-NULL posterior mass
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> nonnull_mass;
};

enum class Distortion { Uniform, Diagonal };

struct EStepParams {
  Distortion distortion = Distortion::Uniform;
  const TranslationTable* table = nullptr;  // null -> implicit uniform init
  double uniform_prob = 0.0;
  double tension = 4.0;
  double null_prob = 0.08;
  bool track_tension_stats = false;
};

double lookup(const EStepParams& params, int e, int f) {
  return params.table ? params.table->prob(e, f) : params.uniform_prob;
}

void estep_sentence(const AlignerCorpus& corpus, std::size_t s, const EStepParams& params,
                    ChunkCounts& out) {
  const std::vector<int>& src = corpus.source[s];
  const std::vector<int>& tgt = corpus.target[s];
  const std::size_t n = src.size();
  const std::size_t m = tgt.size();
  std::vector<double> probs(n + 1);
  std::vector<double>* mass = nullptr;
  if (params.track_tension_stats) {
    auto& slot = out.nonnull_mass[{m, n}];
    if (slot.empty()) slot.assign(m, 0.0);
    mass = &slot;
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const int f = tgt[i - 1];
    double sum = 0.0;
    double z = 0.0;
    if (params.distortion == Distortion::Diagonal) {
      z = diagonal_z(i, m, n, params.tension);
    }
    {
      const double w = params.distortion == Distortion::Uniform
                           ? 1.0 / static_cast<double>(n + 1)
                           : params.null_prob;
      probs[0] = w * lookup(params, 0, f);
      sum += probs[0];
    }
    for (std::size_t j = 1; j <= n; ++j) {
      const double w =
          params.distortion == Distortion::Uniform
              ? 1.0 / static_cast<double>(n + 1)
              : (1.0 - params.null_prob) *
                    std::exp(params.tension * diagonal_feature(i, j, m, n)) / z;
      probs[j] = w * lookup(params, src[j - 1], f);
      sum += probs[j];
    }
    if (!(sum > 0.0)) continue;  // token not covered by the initial table
    out.loglik += std::log(sum);
    out.counts[{0, f}] += probs[0] / sum;
    for (std::size_t j = 1; j <= n; ++j) {
      const double p = probs[j] / sum;
      out.counts[{src[j - 1], f}] += p;
      if (params.track_tension_stats) {
        out.emp_feat += diagonal_feature(i, j, m, n) * p;
        (*mass)[i - 1] += p;
      }
    }
  }
}

struct EStepResult {
  TranslationTable counts;
  double loglik = 0.0;
  double emp_feat = 0.0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> nonnull_mass;
};

EStepResult run_estep(const AlignerCorpus& corpus, const EStepParams& params, unsigned workers) {
  const std::size_t chunks = chunk_count(corpus.size(), kChunkSentences);
  std::vector<ChunkCounts> partial(chunks);
  for_each_chunk(corpus.size(), kChunkSentences, workers,
                 [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                   for (std::size_t s = begin; s < end; ++s) {
                     estep_sentence(corpus, s, params, partial[chunk]);
                   }
                 });
  EStepResult result;
  result.counts.resize(corpus.source_vocab.size());
  for (std::size_t c = 0; c < chunks; ++c) {
    for (const auto& [ef, v] : partial[c].counts) result.counts.add(ef.first, ef.second, v);
    result.loglik += partial[c].loglik;
    result.emp_feat += partial[c].emp_feat;
    for (auto& [mn, mass] : partial[c].nonnull_mass) {
      auto& slot = result.nonnull_mass[mn];
      if (slot.empty()) slot.assign(mass.size(), 0.0);
      for (std::size_t i = 0; i < mass.size(); ++i) slot[i] += mass[i];
    }
  }
  return result;
}

// Derivative in lambda of the expected complete-data log-likelihood:
// emp_feat - sum over positions of nonnull_mass * E_delta[h]. Monotone
// non-increasing in lambda, so a sign bisection finds the maximizer.
double tension_derivative(const EStepResult& stats, double tension) {
  double model_feat = 0.0;
  for (const auto& [mn, mass] : stats.nonnull_mass) {
    const auto [m, n] = mn;
    for (std::size_t i = 1; i <= m; ++i) {
      if (mass[i - 1] > 0.0) model_feat += mass[i - 1] * diagonal_dlogz(i, m, n, tension);
    }
  }
  return stats.emp_feat - model_feat;
}

double fit_tension(const EStepResult& stats, int steps) {
  double lo = 0.1, hi = 14.0;
  if (tension_derivative(stats, lo) <= 0.0) return lo;
  if (tension_derivative(stats, hi) >= 0.0) return hi;
  for (int k = 0; k < steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (tension_derivative(stats, mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AlignerCorpus build_aligner_corpus(const ParallelCorpus& corpus, const MorphLayer* target_lemmas) {
  if (target_lemmas && target_lemmas->size() != corpus.size()) {
    throw InputError("lemma layer has " + std::to_string(target_lemmas->size()) +
                     " sentences, corpus has " + std::to_string(corpus.size()));
  }
  AlignerCorpus out;
  out.source_vocab.add(kNullWord);
  out.source.reserve(corpus.size());
  out.target.reserve(corpus.size());
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const SentencePair& pair = corpus[s];
    std::vector<int> src_ids;
    src_ids.reserve(pair.source.size());
    for (const auto& tok : pair.source) src_ids.push_back(out.source_vocab.add(tok));
    std::vector<int> tgt_ids;
    tgt_ids.reserve(pair.target.size());
    if (target_lemmas) {
      const MorphSentence& morph = (*target_lemmas)[s];
      if (morph.size() != pair.target.size()) {
        throw InputError("lemma layer token count mismatch at sentence " + std::to_string(s));
      }
      for (const auto& mt : morph) tgt_ids.push_back(out.target_vocab.add(mt.lemma));
    } else {
      for (const auto& tok : pair.target) tgt_ids.push_back(out.target_vocab.add(tok));
    }
    out.source.push_back(std::move(src_ids));
    out.target.push_back(std::move(tgt_ids));
  }
  return out;
}

double diagonal_z(std::size_t i, std::size_t m, std::size_t n, double tension) {
  double z = 0.0;
  for (std::size_t j = 1; j <= n; ++j) z += std::exp(tension * diagonal_feature(i, j, m, n));
  return z;
}

double diagonal_dlogz(std::size_t i, std::size_t m, std::size_t n, double tension) {
  double z = 0.0, zh = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double h = diagonal_feature(i, j, m, n);
    const double w = std::exp(tension * h);
    z += w;
    zh += w * h;
  }
  return zh / z;
}

double diagonal_prob(std::size_t j, std::size_t i, std::size_t m, std::size_t n, double tension,
                     double null_prob) {
  if (j == 0) return null_prob;
  return (1.0 - null_prob) * std::exp(tension * diagonal_feature(i, j, m, n)) /
         diagonal_z(i, m, n, tension);
}

TranslationTable train_model1(const AlignerCorpus& corpus, int iterations, unsigned workers,
                              TrainLog* log) {
  if (corpus.size() == 0) throw InputError("cannot train on an empty corpus");
  if (iterations < 1) throw InputError("model 1 iterations must be >= 1");
  TranslationTable table;
  for (int iter = 0; iter < iterations; ++iter) {
    EStepParams params;
    params.distortion = Distortion::Uniform;
    params.table = iter == 0 ? nullptr : &table;
    params.uniform_prob = 1.0 / static_cast<double>(corpus.target_vocab.size());
    EStepResult stats = run_estep(corpus, params, workers);
    if (log) log->model1_loglik.push_back(stats.loglik);
    table = std::move(stats.counts);
    table.normalize(0.0);
  }
  return table;
}

DiagonalAlignmentModel train_diagonal(const AlignerCorpus& corpus, const DiagonalConfig& config,
                                      const TranslationTable* init, unsigned workers,
                                      TrainLog* log) {
  if (corpus.size() == 0) throw InputError("cannot train on an empty corpus");
  if (config.iterations < 0) throw InputError("diagonal iterations must be >= 0");
  if (config.iterations == 0 && !init) {
    throw InputError("diagonal training with 0 iterations requires an initial table");
  }
  DiagonalAlignmentModel model;
  model.source_vocab = corpus.source_vocab;
  model.target_vocab = corpus.target_vocab;
  model.tension = config.initial_tension;
  model.null_prob = config.null_prob;
  if (init) {
    model.table = *init;
  } else {
    model.table.resize(corpus.source_vocab.size());
  }
  for (int iter = 0; iter < config.iterations; ++iter) {
    EStepParams params;
    params.distortion = Distortion::Diagonal;
    params.table = (iter == 0 && !init) ? nullptr : &model.table;
    params.uniform_prob = 1.0 / static_cast<double>(corpus.target_vocab.size());
    params.tension = model.tension;
    params.null_prob = model.null_prob;
    params.track_tension_stats = config.tension_steps > 0;
    EStepResult stats = run_estep(corpus, params, workers);
    if (log) log->diagonal_loglik.push_back(stats.loglik);
    model.table = std::move(stats.counts);
    model.table.normalize(config.smoothing_alpha);
    if (config.tension_steps > 0) {
      model.tension = fit_tension(stats, config.tension_steps);
      if (log) log->tension_path.push_back(model.tension);
    }
  }
  return model;
}

AlignmentLinks viterbi_align(const DiagonalAlignmentModel& model, const TokenSeq& source_forms,
                             const TokenSeq& output_tokens) {
  AlignmentLinks links;
  const std::size_t n = source_forms.size();
  const std::size_t m = output_tokens.size();
  if (n == 0 || m == 0) return links;
  std::vector<int> src_ids(n);
  for (std::size_t j = 0; j < n; ++j) src_ids[j] = model.source_vocab.find(source_forms[j]);
  for (std::size_t i = 1; i <= m; ++i) {
    const int f = model.target_vocab.find(output_tokens[i - 1]);
    // output type never seen in training: NULL wins over the floor
    if (f < 0 || !model.table.known_output(f)) continue;
    const double z = diagonal_z(i, m, n, model.tension);
    const double null_score =
        model.null_prob * model.table.prob_or(0, f, kInferenceFloor);
    double best_score = -1.0;
    double best_dist = 0.0;
    std::size_t best_j = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double h = diagonal_feature(i, j, m, n);
      const double delta = (1.0 - model.null_prob) * std::exp(model.tension * h) / z;
      const double tf = src_ids[j - 1] < 0 ? kInferenceFloor
                                           : model.table.prob_or(src_ids[j - 1], f,
                                                                 kInferenceFloor);
      const double score = delta * tf;
      const double dist = -h;
      if (score > best_score || (score == best_score && dist < best_dist)) {
        best_score = score;
        best_dist = dist;
        best_j = j;
      }
    }
    if (best_j > 0 && best_score > null_score) {
      links.emplace(best_j - 1, i - 1);
    }
  }
  return links;
}

AlignmentLinks viterbi_align(const DiagonalAlignmentModel& model, const SentencePair& pair,
                             const MorphSentence* target_morph) {
  if (!target_morph) return viterbi_align(model, pair.source, pair.target);
  TokenSeq lemmas;
  lemmas.reserve(target_morph->size());
  for (const auto& mt : *target_morph) lemmas.push_back(mt.lemma);
  return viterbi_align(model, pair.source, lemmas);
}

double corpus_loglikelihood(const DiagonalAlignmentModel& model, const ParallelCorpus& corpus,
                            const MorphLayer* target_lemmas, bool floor_unseen) {
  if (target_lemmas && target_lemmas->size() != corpus.size()) {
    throw InputError("lemma layer has " + std::to_string(target_lemmas->size()) +
                     " sentences, corpus has " + std::to_string(corpus.size()));
  }
  const double fallback = floor_unseen ? kInferenceFloor : 0.0;
  double loglik = 0.0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const SentencePair& pair = corpus[s];
    const std::size_t n = pair.source.size();
    const std::size_t m = pair.target.size();
    for (std::size_t i = 1; i <= m; ++i) {
      const std::string& out_tok =
          target_lemmas ? (*target_lemmas)[s][i - 1].lemma : pair.target[i - 1];
      const int f = model.target_vocab.find(out_tok);
      const double z = diagonal_z(i, m, n, model.tension);
      double sum = model.null_prob * (f < 0 ? fallback : model.table.prob_or(0, f, fallback));
      for (std::size_t j = 1; j <= n; ++j) {
        const int e = model.source_vocab.find(pair.source[j - 1]);
        const double tf =
            (f < 0 || e < 0) ? fallback : model.table.prob_or(e, f, fallback);
        sum += (1.0 - model.null_prob) *
               std::exp(model.tension * diagonal_feature(i, j, m, n)) / z * tf;
      }
      loglik += std::log(sum);
    }
  }
  return loglik;
}

void write_alignment_model(const DiagonalAlignmentModel& model, const std::string& path) {
  std::vector<std::tuple<std::string, std::string, double>> entries;
  entries.reserve(model.table.entry_count());
  for (std::size_t e = 0; e < model.table.conditioning_size(); ++e) {
    for (const auto& [f, p] : model.table.row(static_cast<int>(e))) {
      entries.emplace_back(model.source_vocab.word(static_cast<int>(e)),
                           model.target_vocab.word(f), p);
    }
  }
  std::sort(entries.begin(), entries.end());
  char buf[64];
  std::vector<std::string> lines;
  lines.reserve(entries.size() + 1);
  std::string header = "#termdata-ttable\tv1";
  std::snprintf(buf, sizeof(buf), "%.17g", model.tension);
  header += "\tlambda=" + std::string(buf);
  std::snprintf(buf, sizeof(buf), "%.17g", model.null_prob);
  header += "\tp0=" + std::string(buf);
  header += "\tdirection=" + model.direction;
  lines.push_back(header);
  for (const auto& [e, f, p] : entries) {
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    lines.push_back(e + "\t" + f + "\t" + buf);
  }
  write_lines(path, lines);
}

DiagonalAlignmentModel read_alignment_model(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0].rfind("#termdata-ttable\tv1", 0) != 0) {
    throw InputError(path + ": not a termdata-ttable v1 checkpoint");
  }
  DiagonalAlignmentModel model;
  model.source_vocab.add(kNullWord);
  for (const auto& field : split_char(lines[0], '\t')) {
    if (field.rfind("lambda=", 0) == 0) model.tension = std::stod(field.substr(7));
    if (field.rfind("p0=", 0) == 0) model.null_prob = std::stod(field.substr(3));
    if (field.rfind("direction=", 0) == 0) model.direction = field.substr(10);
  }
  std::vector<std::tuple<int, int, double>> entries;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (is_blank(lines[ln])) continue;
    const auto cols = split_char(lines[ln], '\t');
    if (cols.size() != 3) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": expected e<TAB>f<TAB>prob");
    }
    entries.emplace_back(model.source_vocab.add(cols[0]), model.target_vocab.add(cols[1]),
                         std::stod(cols[2]));
  }
  model.table.resize(model.source_vocab.size());
  for (const auto& [e, f, p] : entries) model.table.add(e, f, p);
  return model;
}

}  // namespace termdata
