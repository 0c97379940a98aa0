#include "termdata/morph.hpp"

#include <array>
#include <algorithm>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

constexpr std::array<const char*, 17> kUposTags = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_id_range(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos) return false;
  return is_integer(s.substr(0, dash)) && is_integer(s.substr(dash + 1));
}

}  // namespace

bool is_upos(const std::string& tag) {
  return std::find(kUposTags.begin(), kUposTags.end(), tag) != kUposTags.end();
}

MorphLayer load_conllu_morph(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<MorphSentence> sentences;
  MorphSentence current;
  auto flush = [&] {
    if (!current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  };
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    const auto cols = split_char(line, '\t');
    if (cols.size() < 2) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": expected tab-separated columns");
    }
    if (is_id_range(cols[0]) || cols[0].find('.') != std::string::npos) {
      continue;  // multiword ranges and empty nodes carry no morph row
    }
    if (!is_integer(cols[0])) {
      throw InputError(path + ":" + std::to_string(ln + 1) + ": non-integer token ID '" +
                       cols[0] + "'");
    }
    MorphToken token;
    token.form = cols[1];
    token.lemma = (cols.size() > 2 && cols[2] != "_" && !cols[2].empty()) ? cols[2] : cols[1];
    if (cols.size() > 3 && cols[3] != "_" && is_upos(cols[3])) {
      token.upos = cols[3];
    } else {
      token.upos = "X";
    }
    current.push_back(std::move(token));
  }
  flush();
  return MorphLayer(std::move(sentences));
}

AnnotatedCorpus attach_morph(ParallelCorpus corpus, MorphLayer layer, Side side) {
  AnnotatedCorpus annotated{std::move(corpus), std::nullopt, std::nullopt};
  attach_morph(annotated, std::move(layer), side);
  return annotated;
}

void attach_morph(AnnotatedCorpus& annotated, MorphLayer layer, Side side) {
  const ParallelCorpus& corpus = annotated.corpus;
  if (layer.size() != corpus.size()) {
    throw InputError("morph layer has " + std::to_string(layer.size()) +
                     " sentences, corpus has " + std::to_string(corpus.size()));
  }
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const TokenSeq& tokens = side == Side::Source ? corpus[s].source : corpus[s].target;
    const MorphSentence& morph = layer[s];
    bool ok = tokens.size() == morph.size();
    for (std::size_t t = 0; ok && t < tokens.size(); ++t) ok = tokens[t] == morph[t].form;
    if (!ok) {
      std::string corpus_side = join(tokens, " ");
      std::string layer_side;
      for (std::size_t t = 0; t < morph.size(); ++t) {
        if (t) layer_side += ' ';
        layer_side += morph[t].form;
      }
      throw InputError("morph layer mismatch at sentence " + std::to_string(s) +
                       ": corpus [" + corpus_side + "] vs layer [" + layer_side + "]");
    }
  }
  if (side == Side::Source) {
    annotated.source_morph = std::move(layer);
  } else {
    annotated.target_morph = std::move(layer);
  }
}

}  // namespace termdata
