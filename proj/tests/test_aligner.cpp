#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "termdata/aligner.hpp"
#include "termdata/errors.hpp"
#include "termdata/rng.hpp"
#include "test_util.hpp"

using namespace termdata;

namespace {

// Independent hand-rolled Model 1 EM for tiny corpora: explicit loops over
// string tokens, uniform init over the output vocabulary, NULL included.
// Kept free of any aligner code so it can serve as an oracle.
class HandModel1 {
 public:
  explicit HandModel1(std::vector<std::pair<TokenSeq, TokenSeq>> corpus)
      : corpus_(std::move(corpus)) {
    std::map<std::string, bool> f_seen;
    for (const auto& [src, tgt] : corpus_) {
      for (const auto& f : tgt) f_seen[f] = true;
    }
    f_types_ = f_seen.size();
  }

  double iterate() {  // returns the E-step log-likelihood
    std::map<std::pair<std::string, std::string>, double> counts;
    double loglik = 0.0;
    for (const auto& [src, tgt] : corpus_) {
      TokenSeq cand;
      cand.push_back("<NULL>");
      cand.insert(cand.end(), src.begin(), src.end());
      const double w = 1.0 / static_cast<double>(cand.size());
      for (const auto& f : tgt) {
        double sum = 0.0;
        std::vector<double> probs(cand.size());
        for (std::size_t j = 0; j < cand.size(); ++j) {
          probs[j] = w * prob(cand[j], f);
          sum += probs[j];
        }
        loglik += std::log(sum);
        for (std::size_t j = 0; j < cand.size(); ++j) {
          counts[{cand[j], f}] += probs[j] / sum;
        }
      }
    }
    std::map<std::string, double> totals;
    for (const auto& [ef, c] : counts) totals[ef.first] += c;
    table_.clear();
    for (const auto& [ef, c] : counts) table_[ef] = c / totals[ef.first];
    initialized_ = true;
    return loglik;
  }

  double prob(const std::string& e, const std::string& f) const {
    if (!initialized_) return 1.0 / static_cast<double>(f_types_);
    const auto it = table_.find({e, f});
    return it == table_.end() ? 0.0 : it->second;
  }

 private:
  std::vector<std::pair<TokenSeq, TokenSeq>> corpus_;
  std::map<std::pair<std::string, std::string>, double> table_;
  std::size_t f_types_ = 0;
  bool initialized_ = false;
};

}  // namespace

TEST_CASE("model 1 on a single repeated pair converges to t(x|a) = 1") {
  const auto corpus = make_corpus({{{"a"}, {"x"}}, {{"a"}, {"x"}}, {{"a"}, {"x"}}});
  const auto data = build_aligner_corpus(corpus);
  const auto table = train_model1(data, 5);
  const int a = data.source_vocab.find("a");
  const int x = data.target_vocab.find("x");
  CHECK(table.prob(a, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("model 1 matches the hand-EM oracle on the two-sentence corpus") {
  const std::vector<std::pair<TokenSeq, TokenSeq>> raw = {{{"a", "b"}, {"x", "y"}},
                                                          {{"a"}, {"x"}}};
  const auto corpus = make_corpus(raw);
  const auto data = build_aligner_corpus(corpus);
  HandModel1 oracle(raw);

  for (int iters : {1, 2, 5, 6}) {
    TrainLog log;
    const auto table = train_model1(data, iters, 1, &log);
    HandModel1 reference(raw);
    std::vector<double> oracle_ll;
    for (int k = 0; k < iters; ++k) oracle_ll.push_back(reference.iterate());
    const int a = data.source_vocab.find("a");
    const int b = data.source_vocab.find("b");
    const int x = data.target_vocab.find("x");
    const int y = data.target_vocab.find("y");
    CHECK(table.prob(a, x) == doctest::Approx(reference.prob("a", "x")).epsilon(1e-12));
    CHECK(table.prob(b, y) == doctest::Approx(reference.prob("b", "y")).epsilon(1e-12));
    CHECK(table.prob(0, x) == doctest::Approx(reference.prob("<NULL>", "x")).epsilon(1e-12));
    REQUIRE(log.model1_loglik.size() == static_cast<std::size_t>(iters));
    for (int k = 0; k < iters; ++k) {
      CHECK(log.model1_loglik[k] == doctest::Approx(oracle_ll[k]).epsilon(1e-12));
    }
  }
  // frozen from the oracle: t(x|a) after 5 EM steps is ~0.8776 and crosses
  // 0.9 at the 6th step
  HandModel1 reference(raw);
  for (int k = 0; k < 5; ++k) reference.iterate();
  CHECK(reference.prob("a", "x") == doctest::Approx(0.877597937026).epsilon(1e-9));
  reference.iterate();
  CHECK(reference.prob("a", "x") > 0.9);
  const auto table6 = train_model1(data, 6);
  CHECK(table6.prob(data.source_vocab.find("a"), data.target_vocab.find("x")) > 0.9);
}

TEST_CASE("model 1 log-likelihood is non-decreasing") {
  const auto fixture = testutil::make_bijective_corpus(8, 60, 2, 6, 42);
  const auto data = build_aligner_corpus(fixture.corpus);
  TrainLog log;
  train_model1(data, 8, 1, &log);
  REQUIRE(log.model1_loglik.size() == 8);
  for (std::size_t k = 1; k < log.model1_loglik.size(); ++k) {
    CHECK(log.model1_loglik[k] >=
          log.model1_loglik[k - 1] - 1e-9 * std::fabs(log.model1_loglik[k - 1]));
  }
}

TEST_CASE("per-e normalization holds after every EM iteration") {
  const auto fixture = testutil::make_bijective_corpus(6, 40, 2, 5, 11);
  const auto data = build_aligner_corpus(fixture.corpus);
  for (int iters : {1, 2, 4}) {
    const auto table = train_model1(data, iters);
    for (std::size_t e = 0; e < table.conditioning_size(); ++e) {
      if (table.row(static_cast<int>(e)).empty()) continue;
      double sum = 0.0;
      for (const auto& [f, p] : table.row(static_cast<int>(e))) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  DiagonalConfig config;
  config.iterations = 3;
  const auto model = train_diagonal(data, config);
  for (std::size_t e = 0; e < model.table.conditioning_size(); ++e) {
    if (model.table.row(static_cast<int>(e)).empty()) continue;
    double sum = 0.0;
    for (const auto& [f, p] : model.table.row(static_cast<int>(e))) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("empty corpus is an error") {
  const ParallelCorpus corpus;
  const auto data = build_aligner_corpus(corpus);
  CHECK_THROWS_AS(train_model1(data, 5), InputError);
  CHECK_THROWS_AS(train_diagonal(data, DiagonalConfig{}), InputError);
}

TEST_CASE("distortion distribution sums to 1 for randomized shapes") {
  Rng rng(123);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = 1 + rng.next_below(30);
    const std::size_t n = 1 + rng.next_below(30);
    const std::size_t i = 1 + rng.next_below(m);
    const double tension = 0.1 + 13.9 * rng.next_unit();
    const double p0 = rng.next_unit() * 0.5;
    double sum = diagonal_prob(0, i, m, n, tension, p0);
    for (std::size_t j = 1; j <= n; ++j) sum += diagonal_prob(j, i, m, n, tension, p0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("distortion limits: flat at tension 0, single candidate mass") {
  // tension -> 0: uniform over j with mass (1 - p0)
  for (std::size_t j = 1; j <= 5; ++j) {
    CHECK(diagonal_prob(j, 2, 7, 5, 0.0, 0.08) == doctest::Approx(0.92 / 5).epsilon(1e-12));
  }
  // n = 1: the only word candidate takes all non-NULL mass
  CHECK(diagonal_prob(1, 1, 1, 1, 4.0, 0.08) == doctest::Approx(0.92).epsilon(1e-12));
}

TEST_CASE("diagonal training recovers a monotone dictionary corpus") {
  const auto fixture = testutil::make_bijective_corpus(50, 2000, 3, 10, 20240817);
  const auto data = build_aligner_corpus(fixture.corpus, &fixture.target_morph);
  TrainLog log;
  const auto m1 = train_model1(data, 5, 1, &log);
  DiagonalConfig config;
  const auto model = train_diagonal(data, config, &m1, 1, &log);
  CHECK(model.tension > config.initial_tension);

  std::size_t gold = 0, predicted = 0, correct = 0;
  for (std::size_t s = 0; s < fixture.corpus.size(); ++s) {
    const auto& pair = fixture.corpus[s];
    const auto links = viterbi_align(model, pair, &fixture.target_morph[s]);
    gold += pair.source.size();
    predicted += links.size();
    for (const auto& [i, j] : links) {
      if (i == j) ++correct;
    }
  }
  const double precision = static_cast<double>(correct) / static_cast<double>(predicted);
  const double recall = static_cast<double>(correct) / static_cast<double>(gold);
  const double f1 = 2.0 * precision * recall / (precision + recall);
  CHECK(f1 >= 0.98);
}

TEST_CASE("diagonal log-likelihood is non-decreasing with fixed tension") {
  const auto fixture = testutil::make_bijective_corpus(10, 150, 2, 7, 5);
  const auto data = build_aligner_corpus(fixture.corpus);
  const auto m1 = train_model1(data, 2);
  DiagonalConfig config;
  config.iterations = 8;
  config.tension_steps = 0;  // hold lambda fixed
  SUBCASE("without smoothing") {
    config.smoothing_alpha = 0.0;
    TrainLog log;
    train_diagonal(data, config, &m1, 1, &log);
    REQUIRE(log.diagonal_loglik.size() == 8);
    for (std::size_t k = 1; k < log.diagonal_loglik.size(); ++k) {
      CHECK(log.diagonal_loglik[k] >=
            log.diagonal_loglik[k - 1] - 1e-9 * std::fabs(log.diagonal_loglik[k - 1]));
    }
  }
  SUBCASE("with the default smoothing") {
    TrainLog log;
    train_diagonal(data, config, &m1, 1, &log);
    REQUIRE(log.diagonal_loglik.size() == 8);
    for (std::size_t k = 1; k < log.diagonal_loglik.size(); ++k) {
      CHECK(log.diagonal_loglik[k] >=
            log.diagonal_loglik[k - 1] - 1e-9 * std::fabs(log.diagonal_loglik[k - 1]));
    }
  }
}

TEST_CASE("training is bit-identical across worker counts") {
  testutil::TempDir dir;
  const auto fixture = testutil::make_bijective_corpus(20, 500, 3, 9, 77);
  const auto data = build_aligner_corpus(fixture.corpus, &fixture.target_morph);
  std::string dumps[2];
  int idx = 0;
  for (unsigned workers : {1u, 4u}) {
    const auto m1 = train_model1(data, 4, workers);
    DiagonalConfig config;
    config.iterations = 4;
    const auto model = train_diagonal(data, config, &m1, workers);
    const std::string path = dir.file("model" + std::to_string(workers));
    write_alignment_model(model, path);
    dumps[idx++] = testutil::read_file(path);
  }
  CHECK(dumps[0] == dumps[1]);
  CHECK(!dumps[0].empty());
}

TEST_CASE("viterbi on a trained bijective model aligns the identity") {
  const auto fixture = testutil::make_bijective_corpus(10, 300, 2, 6, 3);
  const auto data = build_aligner_corpus(fixture.corpus);
  const auto m1 = train_model1(data, 5);
  DiagonalConfig config;
  const auto model = train_diagonal(data, config, &m1);
  const auto links = viterbi_align(model, TokenSeq{"e1", "e2"}, TokenSeq{"f1", "f2"});
  CHECK(links == AlignmentLinks{{0, 0}, {1, 1}});
}

TEST_CASE("viterbi: OOV output token yields no link, never a crash") {
  const auto corpus = make_corpus({{{"a", "b"}, {"x", "y"}}, {{"a"}, {"x"}}});
  const auto data = build_aligner_corpus(corpus);
  const auto m1 = train_model1(data, 5);
  DiagonalConfig config;
  config.iterations = 2;
  const auto model = train_diagonal(data, config, &m1);
  const auto links = viterbi_align(model, TokenSeq{"a", "b"}, TokenSeq{"x", "UNSEEN"});
  for (const auto& [i, j] : links) CHECK(j != 1);
  // a sentence of only OOV tokens serializes to an empty link line
  const auto none = viterbi_align(model, TokenSeq{"a"}, TokenSeq{"OOV1", "OOV2"});
  CHECK(none.empty());
  CHECK(render_alignment_line(none).empty());
}

TEST_CASE("corpus log-likelihood: hand-checkable single pair and empty corpus") {
  DiagonalAlignmentModel model;
  model.source_vocab.add(kNullWord);
  const int a = model.source_vocab.add("a");
  const int x = model.target_vocab.add("x");
  model.table.resize(2);
  model.table.add(a, x, 1.0);
  model.null_prob = 0.08;
  model.tension = 4.0;
  const auto corpus = make_corpus({{{"a"}, {"x"}}});
  CHECK(corpus_loglikelihood(model, corpus) ==
        doctest::Approx(std::log(0.92)).epsilon(1e-12));
  CHECK(corpus_loglikelihood(model, ParallelCorpus{}) == 0.0);
}

TEST_CASE("corpus log-likelihood of a monotone corpus increases with tension up to the optimum") {
  const auto fixture = testutil::make_bijective_corpus(12, 200, 3, 8, 9);
  const auto data = build_aligner_corpus(fixture.corpus);
  const auto m1 = train_model1(data, 5);
  DiagonalConfig config;
  config.iterations = 3;
  config.tension_steps = 0;
  DiagonalAlignmentModel model = train_diagonal(data, config, &m1);
  std::vector<double> lls;
  for (double tension = 0.5; tension <= 8.0; tension += 0.75) {
    model.tension = tension;
    lls.push_back(corpus_loglikelihood(model, fixture.corpus));
  }
  const auto best = std::max_element(lls.begin(), lls.end());
  CHECK(best != lls.begin());  // optimum is above the smallest grid point
  for (auto it = lls.begin(); it != best; ++it) {
    CHECK(*(it + 1) > *it);  // strictly increasing up to the optimum
  }
}

TEST_CASE("model checkpoint round-trips through the TSV dump") {
  testutil::TempDir dir;
  const auto fixture = testutil::make_bijective_corpus(6, 50, 2, 5, 31);
  const auto data = build_aligner_corpus(fixture.corpus);
  const auto m1 = train_model1(data, 3);
  DiagonalConfig config;
  config.iterations = 2;
  const auto model = train_diagonal(data, config, &m1);
  const std::string path = dir.file("model.tsv");
  write_alignment_model(model, path);
  const auto loaded = read_alignment_model(path);
  CHECK(loaded.tension == model.tension);
  CHECK(loaded.null_prob == model.null_prob);
  CHECK(loaded.direction == model.direction);
  // emitting the loaded model reproduces the dump byte for byte
  const std::string path2 = dir.file("model2.tsv");
  write_alignment_model(loaded, path2);
  CHECK(testutil::read_file(path) == testutil::read_file(path2));
  // and the loaded model viterbi-aligns identically
  const auto& pair = fixture.corpus[0];
  CHECK(viterbi_align(loaded, pair, nullptr) == viterbi_align(model, pair, nullptr));
}
