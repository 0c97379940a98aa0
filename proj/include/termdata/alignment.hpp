#ifndef TERMDATA_ALIGNMENT_HPP
#define TERMDATA_ALIGNMENT_HPP

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace termdata {

// 0-based (source_index, target_index) pairs for one sentence.
using AlignmentLink = std::pair<std::size_t, std::size_t>;
using AlignmentLinks = std::set<AlignmentLink>;

// Pharaoh text format: per sentence one line of space-separated "i-j"
// pairs, i = source index, j = target index. Empty line = no links.
std::vector<AlignmentLinks> load_alignments(const std::string& path);
std::string render_alignment_line(const AlignmentLinks& links);
void write_alignments(const std::string& path, const std::vector<AlignmentLinks>& alignments);

enum class SymmetrizationHeuristic { Intersection, Union, GrowDiagFinalAnd };

// Combines forward and reverse link sets over the same sentence pair.
// grow-diag-final-and follows the standard phrase-based pipeline definition.
AlignmentLinks symmetrize(const AlignmentLinks& forward, const AlignmentLinks& reverse,
                          SymmetrizationHeuristic heuristic, std::size_t source_len,
                          std::size_t target_len);

}  // namespace termdata

#endif  // TERMDATA_ALIGNMENT_HPP
