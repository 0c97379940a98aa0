#include "termdata/alignment.hpp"

#include <array>
#include <charconv>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

namespace {

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

std::vector<AlignmentLinks> load_alignments(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<AlignmentLinks> alignments;
  alignments.reserve(lines.size());
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    AlignmentLinks links;
    for (const auto& tok : split_ws(lines[ln])) {
      const auto dash = tok.find('-');
      std::size_t i = 0, j = 0;
      if (dash == std::string::npos ||
          !parse_index(std::string_view(tok).substr(0, dash), i) ||
          !parse_index(std::string_view(tok).substr(dash + 1), j)) {
        throw InputError(path + ":" + std::to_string(ln + 1) + ": malformed alignment pair '" +
                         tok + "'");
      }
      links.emplace(i, j);
    }
    alignments.push_back(std::move(links));
  }
  return alignments;
}

std::string render_alignment_line(const AlignmentLinks& links) {
  std::string out;
  for (const auto& [i, j] : links) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i);
    out += '-';
    out += std::to_string(j);
  }
  return out;
}

void write_alignments(const std::string& path, const std::vector<AlignmentLinks>& alignments) {
  std::vector<std::string> lines;
  lines.reserve(alignments.size());
  for (const auto& links : alignments) lines.push_back(render_alignment_line(links));
  write_lines(path, lines);
}

namespace {

AlignmentLinks set_union(const AlignmentLinks& a, const AlignmentLinks& b) {
  AlignmentLinks out = a;
  out.insert(b.begin(), b.end());
  return out;
}

AlignmentLinks set_intersection(const AlignmentLinks& a, const AlignmentLinks& b) {
  AlignmentLinks out;
  for (const auto& link : a) {
    if (b.count(link)) out.insert(link);
  }
  return out;
}

}  // namespace

AlignmentLinks symmetrize(const AlignmentLinks& forward, const AlignmentLinks& reverse,
                          SymmetrizationHeuristic heuristic, std::size_t source_len,
                          std::size_t target_len) {
  if (heuristic == SymmetrizationHeuristic::Union) return set_union(forward, reverse);
  AlignmentLinks result = set_intersection(forward, reverse);
  if (heuristic == SymmetrizationHeuristic::Intersection) return result;

  const AlignmentLinks both = set_union(forward, reverse);
  std::vector<bool> src_aligned(source_len, false), tgt_aligned(target_len, false);
  for (const auto& [i, j] : result) {
    src_aligned[i] = true;
    tgt_aligned[j] = true;
  }
  static constexpr std::array<std::pair<int, int>, 8> kNeighbors = {
      {{-1, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};

  // grow-diag: repeatedly extend with union points adjacent to the current
  // alignment while either end is still unaligned
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < source_len; ++i) {
      for (std::size_t j = 0; j < target_len; ++j) {
        if (!result.count({i, j})) continue;
        for (const auto& [di, dj] : kNeighbors) {
          const long ni = static_cast<long>(i) + di;
          const long nj = static_cast<long>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<long>(source_len) ||
              nj >= static_cast<long>(target_len)) {
            continue;
          }
          const AlignmentLink cand{static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)};
          if ((!src_aligned[cand.first] || !tgt_aligned[cand.second]) && both.count(cand) &&
              !result.count(cand)) {
            result.insert(cand);
            src_aligned[cand.first] = true;
            tgt_aligned[cand.second] = true;
            grew = true;
          }
        }
      }
    }
  }
  // final-and over each directed set: add links whose both ends are unaligned
  for (const AlignmentLinks* dir : {&forward, &reverse}) {
    for (const auto& [i, j] : *dir) {
      if (i < source_len && j < target_len && !src_aligned[i] && !tgt_aligned[j]) {
        result.emplace(i, j);
        src_aligned[i] = true;
        tgt_aligned[j] = true;
      }
    }
  }
  return result;
}

}  // namespace termdata
