#ifndef TERMDATA_TESTS_TEST_UTIL_HPP
#define TERMDATA_TESTS_TEST_UTIL_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "termdata/corpus.hpp"
#include "termdata/morph.hpp"
#include "termdata/rng.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto candidate = base / ("termdata_test_" + std::to_string(counter()++));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Bijective-dictionary corpus: source words e<k> map to target words f<k>,
// sentences keep monotone order, so the gold alignment is the identity.
struct SyntheticCorpus {
  termdata::ParallelCorpus corpus;
  termdata::MorphLayer target_morph;  // lemma = surface, all NOUN
};

inline SyntheticCorpus make_bijective_corpus(std::size_t vocab, std::size_t sentences,
                                             std::size_t min_len, std::size_t max_len,
                                             std::uint64_t seed) {
  std::vector<std::pair<termdata::TokenSeq, termdata::TokenSeq>> pairs;
  std::vector<termdata::MorphSentence> morph;
  termdata::Rng rng(seed);
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t len = min_len + rng.next_below(max_len - min_len + 1);
    termdata::TokenSeq src, tgt;
    termdata::MorphSentence row;
    for (std::size_t i = 0; i < len; ++i) {
      const auto k = rng.next_below(vocab);
      src.push_back("e" + std::to_string(k));
      tgt.push_back("f" + std::to_string(k));
      row.push_back(termdata::MorphToken{tgt.back(), tgt.back(), "NOUN"});
    }
    pairs.emplace_back(std::move(src), std::move(tgt));
    morph.push_back(std::move(row));
  }
  return SyntheticCorpus{termdata::make_corpus(pairs),
                         termdata::MorphLayer(std::move(morph))};
}

}  // namespace testutil

#endif  // TERMDATA_TESTS_TEST_UTIL_HPP
