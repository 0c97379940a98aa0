#include "termdata/lemmatizer.hpp"

#include <algorithm>
#include <map>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

MorphToken LookupLemmatizer::lemmatize_token(const Token& form) const {
  const std::string key = fold_case_ ? fold_lower(form) : form;
  const auto it = table_.find(key);
  if (it == table_.end()) return MorphToken{form, form, "X"};
  return MorphToken{form, it->second.first, it->second.second};
}

MorphSentence LookupLemmatizer::lemmatize(const TokenSeq& tokens) const {
  MorphSentence out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) out.push_back(lemmatize_token(tok));
  return out;
}

void LookupLemmatizer::save(const std::string& path) const {
  std::vector<std::string> lines;
  lines.reserve(table_.size());
  std::map<std::string, std::pair<std::string, std::string>> sorted(table_.begin(), table_.end());
  for (const auto& [form, entry] : sorted) {
    lines.push_back(form + "\t" + entry.first + "\t" + entry.second);
  }
  write_lines(path, lines);
}

namespace {

bool looks_like_conllu(const std::vector<std::string>& lines) {
  for (const auto& line : lines) {
    if (is_blank(line) || line[0] == '#') continue;
    const auto cols = split_char(line, '\t');
    if (cols.size() < 4) return false;
    for (char c : cols[0]) {
      if ((c < '0' || c > '9') && c != '-' && c != '.') return false;
    }
    return true;
  }
  return false;
}

}  // namespace

LookupLemmatizer build_lookup(const std::vector<std::string>& paths, LemmaSourceFormat format,
                              bool fold_case) {
  if (paths.empty()) throw InputError("lookup lemmatizer needs at least one input file");
  // form -> (lemma, upos) -> count; ordered maps make tie-breaking and
  // file-order independence automatic
  std::map<std::string, std::map<std::pair<std::string, std::string>, std::size_t>> counts;
  std::size_t rows = 0;
  for (const auto& path : paths) {
    const auto lines = read_lines(path);
    const bool conllu = format == LemmaSourceFormat::Conllu ||
                        (format == LemmaSourceFormat::Auto && looks_like_conllu(lines));
    if (conllu) {
      const MorphLayer layer = load_conllu_morph(path);
      for (const auto& sentence : layer.sentences()) {
        for (const auto& mt : sentence) {
          const std::string key = fold_case ? fold_lower(mt.form) : mt.form;
          ++counts[key][{mt.lemma, mt.upos}];
          ++rows;
        }
      }
    } else {
      for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (is_blank(lines[ln]) || lines[ln][0] == '#') continue;
        const auto cols = split_char(lines[ln], '\t');
        if (cols.size() < 2) {
          throw InputError(path + ":" + std::to_string(ln + 1) +
                           ": expected form<TAB>lemma[<TAB>upos]");
        }
        const std::string form(trim(cols[0]));
        const std::string lemma(trim(cols[1]));
        std::string upos = cols.size() > 2 ? std::string(trim(cols[2])) : "X";
        if (form.empty() || lemma.empty()) {
          throw InputError(path + ":" + std::to_string(ln + 1) + ": empty form or lemma");
        }
        if (!is_upos(upos)) upos = "X";
        const std::string key = fold_case ? fold_lower(form) : form;
        ++counts[key][{lemma, upos}];
        ++rows;
      }
    }
  }
  if (rows == 0) throw InputError("no lemma rows found in the given files");
  std::unordered_map<std::string, std::pair<std::string, std::string>> table;
  table.reserve(counts.size());
  for (const auto& [form, variants] : counts) {
    std::pair<std::string, std::string> best;
    std::size_t best_count = 0;
    for (const auto& [variant, count] : variants) {  // ascending (lemma, upos)
      if (count > best_count) {
        best = variant;
        best_count = count;
      }
    }
    table.emplace(form, best);
  }
  return LookupLemmatizer(std::move(table), fold_case);
}

}  // namespace termdata
