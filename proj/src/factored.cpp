#include "termdata/factored.hpp"

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

const std::string kPipeEscape = "&#124;";

std::string escape_pipes(const std::string& token) {
  if (token.find('|') == std::string::npos) return token;
  std::string out;
  out.reserve(token.size() + 8);
  for (char c : token) {
    if (c == '|') {
      out += kPipeEscape;
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape_pipes(const std::string& token) {
  std::string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    if (token.compare(i, kPipeEscape.size(), kPipeEscape) == 0) {
      out += '|';
      i += kPipeEscape.size();
    } else {
      out += token[i++];
    }
  }
  return out;
}

bool factor_from_char(char c, Factor& out) {
  switch (c) {
    case 'w': out = Factor::W; return true;
    case 's': out = Factor::S; return true;
    case 't': out = Factor::T; return true;
    default: return false;
  }
}

}  // namespace

std::string serialize_factored_inline(const FactoredSentence& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ' ';
    out += escape_pipes(fs[i].token);
    out += '|';
    out += static_cast<char>(fs[i].factor);
  }
  return out;
}

ParallelFactoredLines serialize_factored_parallel(const FactoredSentence& fs) {
  ParallelFactoredLines lines;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) {
      lines.tokens += ' ';
      lines.factors += ' ';
    }
    lines.tokens += fs[i].token;
    lines.factors += static_cast<char>(fs[i].factor);
  }
  return lines;
}

FactoredSentence parse_factored_inline(const std::string& line) {
  FactoredSentence fs;
  const auto units = split_ws(line);
  for (std::size_t u = 0; u < units.size(); ++u) {
    const std::string& unit = units[u];
    const auto sep = unit.rfind('|');
    if (sep == std::string::npos || sep + 2 != unit.size() || sep == 0) {
      throw InputError("factored unit " + std::to_string(u + 1) + " ('" + unit +
                       "'): missing token|factor separator");
    }
    Factor factor;
    if (!factor_from_char(unit[sep + 1], factor)) {
      throw InputError("factored unit " + std::to_string(u + 1) + ": unknown factor '" +
                       unit.substr(sep + 1) + "'");
    }
    fs.push_back(FactoredToken{unescape_pipes(unit.substr(0, sep)), factor});
  }
  return fs;
}

FactoredSentence parse_factored_parallel(const std::string& token_line,
                                         const std::string& factor_line) {
  const auto tokens = split_ws(token_line);
  const auto factors = split_ws(factor_line);
  if (tokens.size() != factors.size()) {
    throw InputError("parallel factored lines disagree: " + std::to_string(tokens.size()) +
                     " tokens vs " + std::to_string(factors.size()) + " factors");
  }
  FactoredSentence fs;
  fs.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Factor factor;
    if (factors[i].size() != 1 || !factor_from_char(factors[i][0], factor)) {
      throw InputError("factor " + std::to_string(i + 1) + ": unknown factor '" + factors[i] +
                       "'");
    }
    fs.push_back(FactoredToken{tokens[i], factor});
  }
  return fs;
}

TokenSeq strip_annotations(const FactoredSentence& fs) {
  TokenSeq out;
  out.reserve(fs.size());
  for (const auto& ft : fs) {
    if (ft.factor != Factor::T) out.push_back(ft.token);
  }
  return out;
}

FactoredSentence propagate_factors_to_subwords(const FactoredSentence& fs,
                                               const std::vector<TokenSeq>& segmentation) {
  if (segmentation.size() != fs.size()) {
    throw InputError("segmentation covers " + std::to_string(segmentation.size()) +
                     " tokens, sentence has " + std::to_string(fs.size()));
  }
  FactoredSentence out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (segmentation[i].empty()) {
      throw InputError("segmentation of token " + std::to_string(i + 1) + " is empty");
    }
    for (const auto& unit : segmentation[i]) {
      out.push_back(FactoredToken{unit, fs[i].factor});
    }
  }
  return out;
}

std::vector<TokenSeq> group_subword_units(const TokenSeq& tokens, const TokenSeq& units,
                                          const std::string& join_marker) {
  std::vector<TokenSeq> groups;
  groups.reserve(tokens.size());
  std::size_t u = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    TokenSeq group;
    std::string assembled;
    while (u < units.size()) {
      const std::string& unit = units[u];
      group.push_back(unit);
      ++u;
      const bool continues = unit.size() > join_marker.size() &&
                             unit.compare(unit.size() - join_marker.size(), join_marker.size(),
                                          join_marker) == 0;
      assembled += continues ? unit.substr(0, unit.size() - join_marker.size()) : unit;
      if (!continues) break;
    }
    if (assembled != tokens[i]) {
      throw InputError("subword units do not reassemble token " + std::to_string(i + 1) + " ('" +
                       tokens[i] + "' vs '" + assembled + "')");
    }
    groups.push_back(std::move(group));
  }
  if (u != units.size()) {
    throw InputError("segmentation has " + std::to_string(units.size() - u) +
                     " trailing unmatched units");
  }
  return groups;
}

}  // namespace termdata
