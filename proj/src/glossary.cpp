#include "termdata/glossary.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

Glossary::Glossary(std::vector<TermEntry> entries) : entries_(std::move(entries)) {
  folded_sources_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    TokenSeq folded;
    folded.reserve(entries_[i].source_tokens.size());
    for (const auto& t : entries_[i].source_tokens) folded.push_back(fold_lower(t));
    folded_sources_.push_back(std::move(folded));
    by_first_[entries_[i].source_tokens.front()].push_back(i);
    by_first_folded_[folded_sources_[i].front()].push_back(i);
  }
  auto longest_first = [this](std::vector<std::size_t>& ids) {
    std::stable_sort(ids.begin(), ids.end(), [this](std::size_t a, std::size_t b) {
      return entries_[a].source_tokens.size() > entries_[b].source_tokens.size();
    });
  };
  for (auto& [key, ids] : by_first_) longest_first(ids);
  for (auto& [key, ids] : by_first_folded_) longest_first(ids);
}

std::vector<TermMatch> Glossary::find_candidates(const TokenSeq& tokens, bool fold_case) const {
  std::vector<TermMatch> matches;
  if (entries_.empty() || tokens.empty()) return matches;
  std::vector<std::string> folded;
  if (fold_case) {
    folded.reserve(tokens.size());
    for (const auto& t : tokens) folded.push_back(fold_lower(t));
  }
  const auto& view = fold_case ? folded : tokens;
  const auto& index = fold_case ? by_first_folded_ : by_first_;
  for (std::size_t pos = 0; pos < view.size(); ++pos) {
    const auto it = index.find(view[pos]);
    if (it == index.end()) continue;
    for (std::size_t id : it->second) {
      const TokenSeq& pattern = fold_case ? folded_sources_[id] : entries_[id].source_tokens;
      if (pos + pattern.size() > view.size()) continue;
      bool hit = true;
      for (std::size_t k = 1; hit && k < pattern.size(); ++k) {
        hit = view[pos + k] == pattern[k];
      }
      if (hit) matches.push_back(TermMatch{pos, pos + pattern.size(), id});
    }
  }
  return matches;
}

Glossary load_glossary(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<TermEntry> entries;
  std::set<std::pair<TokenSeq, TokenSeq>> seen;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (is_blank(lines[ln])) continue;
    const auto cols = split_char(lines[ln], '\t');
    if (cols.size() < 2) {
      throw InputError(path + ":" + std::to_string(ln + 1) +
                       ": expected source<TAB>target_lemma");
    }
    TermEntry entry;
    entry.source_tokens = split_ws(cols[0]);
    entry.target_lemma_tokens = split_ws(cols[1]);
    if (cols.size() > 2) entry.upos_hint = std::string(trim(cols[2]));
    if (entry.source_tokens.empty() || entry.target_lemma_tokens.empty()) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": empty term field");
    }
    if (!seen.insert({entry.source_tokens, entry.target_lemma_tokens}).second) {
      std::cerr << "warning: " << path << ":" << (ln + 1) << ": duplicate glossary row collapsed\n";
      continue;
    }
    entries.push_back(std::move(entry));
  }
  return Glossary(std::move(entries));
}

}  // namespace termdata
