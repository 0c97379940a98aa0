#ifndef TERMDATA_CORPUS_HPP
#define TERMDATA_CORPUS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace termdata {

// A token is a non-empty string with no whitespace. Inline factored output
// additionally escapes '|' (see factored.hpp); tokens themselves may carry it.
using Token = std::string;
using TokenSeq = std::vector<Token>;

struct SentencePair {
  std::size_t index = 0;  // original 0-based line number, stable across drops
  TokenSeq source;
  TokenSeq target;
};

// Immutable after loading; pairs whose either side was blank are dropped at
// load time (with a warning), so indices may have gaps.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;
  explicit ParallelCorpus(std::vector<SentencePair> pairs) : pairs_(std::move(pairs)) {}

  const std::vector<SentencePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const SentencePair& operator[](std::size_t i) const { return pairs_[i]; }

  std::size_t dropped_count() const { return dropped_; }
  void set_dropped_count(std::size_t n) { dropped_ = n; }

 private:
  std::vector<SentencePair> pairs_;
  std::size_t dropped_ = 0;
};

// Loads a sentence-per-line, whitespace-tokenized parallel corpus.
// Hard errors: differing line counts, invalid UTF-8. Pairs with a blank
// side are dropped; their original indices are preserved on the survivors.
ParallelCorpus load_parallel_corpus(const std::string& src_path, const std::string& tgt_path);

// Builds a corpus from in-memory token sequences (indices 0..n-1).
ParallelCorpus make_corpus(const std::vector<std::pair<TokenSeq, TokenSeq>>& pairs);

// Emits one side as normalized text: tokens joined by single spaces, one
// sentence per line, LF endings.
void emit_corpus_side(const ParallelCorpus& corpus, bool source_side, const std::string& path);
std::vector<std::string> render_corpus_side(const ParallelCorpus& corpus, bool source_side);

}  // namespace termdata

#endif  // TERMDATA_CORPUS_HPP
