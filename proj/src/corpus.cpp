#include "termdata/corpus.hpp"

#include <iostream>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

ParallelCorpus load_parallel_corpus(const std::string& src_path, const std::string& tgt_path) {
  const auto src_lines = read_lines(src_path);
  const auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw InputError("line-count mismatch: " + src_path + " has " +
                     std::to_string(src_lines.size()) + " lines, " + tgt_path + " has " +
                     std::to_string(tgt_lines.size()));
  }
  std::vector<SentencePair> pairs;
  pairs.reserve(src_lines.size());
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    SentencePair pair;
    pair.index = i;
    pair.source = split_ws(src_lines[i]);
    pair.target = split_ws(tgt_lines[i]);
    if (pair.source.empty() || pair.target.empty()) {
      std::cerr << "warning: dropping pair at line " << (i + 1)
                << " (blank " << (pair.source.empty() ? "source" : "target") << " side)\n";
      ++dropped;
      continue;
    }
    pairs.push_back(std::move(pair));
  }
  ParallelCorpus corpus(std::move(pairs));
  corpus.set_dropped_count(dropped);
  return corpus;
}

ParallelCorpus make_corpus(const std::vector<std::pair<TokenSeq, TokenSeq>>& pairs) {
  std::vector<SentencePair> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.push_back(SentencePair{i, pairs[i].first, pairs[i].second});
  }
  return ParallelCorpus(std::move(out));
}

std::vector<std::string> render_corpus_side(const ParallelCorpus& corpus, bool source_side) {
  std::vector<std::string> lines;
  lines.reserve(corpus.size());
  for (const auto& pair : corpus.pairs()) {
    lines.push_back(join(source_side ? pair.source : pair.target, " "));
  }
  return lines;
}

void emit_corpus_side(const ParallelCorpus& corpus, bool source_side, const std::string& path) {
  write_lines(path, render_corpus_side(corpus, source_side));
}

}  // namespace termdata
