#ifndef TERMDATA_FACTORED_HPP
#define TERMDATA_FACTORED_HPP

#include <string>
#include <vector>

#include "termdata/corpus.hpp"

namespace termdata {

// The additional input stream attached to each source token:
// W = regular word, S = annotated source word, T = target-language
// annotation token inserted after the span it annotates.
enum class Factor : char { W = 'w', S = 's', T = 't' };

struct FactoredToken {
  Token token;
  Factor factor = Factor::W;

  bool operator==(const FactoredToken&) const = default;
};

using FactoredSentence = std::vector<FactoredToken>;

enum class FactoredFormat { Inline, Parallel };

// Two-line rendering of the parallel format.
struct ParallelFactoredLines {
  std::string tokens;
  std::string factors;
};

// Inline rendering: "token|f" joined by single spaces, with '|' inside a
// token escaped as &#124; first. The parallel rendering keeps tokens raw and
// emits a factor line of equal token count.
std::string serialize_factored_inline(const FactoredSentence& fs);
ParallelFactoredLines serialize_factored_parallel(const FactoredSentence& fs);

// Inverse of the serializers: splits at the last '|' per unit (inline) and
// reverses the escape. Unknown factors, missing separators and token/factor
// count mismatches are parse errors naming the offending position.
FactoredSentence parse_factored_inline(const std::string& line);
FactoredSentence parse_factored_parallel(const std::string& token_line,
                                         const std::string& factor_line);

// Source tokens with T annotations removed; factors drop to plain tokens.
TokenSeq strip_annotations(const FactoredSentence& fs);

// Broadcasts each token's factor onto its subword units. `segmentation`
// must hold one unit list per factored token.
FactoredSentence propagate_factors_to_subwords(const FactoredSentence& fs,
                                               const std::vector<TokenSeq>& segmentation);

// Groups a flat segmented-token stream (subword-nmt style continuation
// marker, default "@@") back into per-token unit lists for the given tokens.
// Errors if the units do not reassemble the tokens.
std::vector<TokenSeq> group_subword_units(const TokenSeq& tokens, const TokenSeq& units,
                                          const std::string& join_marker = "@@");

}  // namespace termdata

#endif  // TERMDATA_FACTORED_HPP
