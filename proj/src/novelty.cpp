#include "termdata/novelty.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

void add_vocab(const std::string& path, bool lowercase, std::unordered_set<std::string>& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open training file: " + path);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) {
      throw InputError(path + ":" + std::to_string(ln) + ": invalid UTF-8");
    }
    for (auto& tok : split_ws(line)) {
      vocab.insert(lowercase ? fold_lower(tok) : std::move(tok));
    }
  }
}

}  // namespace

NoveltyReport novel_wordforms(const std::vector<TokenSeq>& hypotheses,
                              const std::string& training_src_path,
                              const std::string& training_tgt_path,
                              const NoveltyOptions& options) {
  std::unordered_set<std::string> training_vocab;
  add_vocab(training_src_path, options.lowercase, training_vocab);
  add_vocab(training_tgt_path, options.lowercase, training_vocab);

  struct Occurrences {
    std::size_t frequency = 0;
    std::vector<std::size_t> examples;
  };
  std::unordered_map<std::string, Occurrences> novel;
  std::unordered_set<std::string> hyp_types;
  NoveltyReport report;
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    for (const auto& raw : hypotheses[s]) {
      const std::string form = options.lowercase ? fold_lower(raw) : raw;
      hyp_types.insert(form);
      if (training_vocab.count(form)) continue;
      auto& occ = novel[form];
      ++occ.frequency;
      ++report.novel_tokens;
      if (occ.examples.size() < 3 && (occ.examples.empty() || occ.examples.back() != s)) {
        occ.examples.push_back(s);
      }
    }
  }
  report.hypothesis_types = hyp_types.size();
  report.forms.reserve(novel.size());
  for (auto& [form, occ] : novel) {
    report.forms.push_back(NovelForm{form, occ.frequency, std::move(occ.examples)});
  }
  std::sort(report.forms.begin(), report.forms.end(), [](const NovelForm& a, const NovelForm& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.form < b.form;
  });
  return report;
}

}  // namespace termdata
