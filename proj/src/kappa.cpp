#include "termdata/kappa.hpp"

#include <algorithm>
#include <map>

#include "termdata/errors.hpp"
#include "termdata/text.hpp"

namespace termdata {

JudgmentMatrix load_judgments(const std::string& path) {
  const auto lines = read_lines(path);
  JudgmentMatrix matrix;
  const std::string kHeader = "#categories:";
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    if (is_blank(line)) continue;
    if (line.rfind(kHeader, 0) == 0) {
      for (const auto& cat : split_char(line.substr(kHeader.size()), ',')) {
        const auto trimmed = trim(cat);
        if (!trimmed.empty()) matrix.categories.emplace_back(trimmed);
      }
      continue;
    }
    if (line[0] == '#') continue;
    matrix.items.push_back(split_char(line, '\t'));
    for (auto& cell : matrix.items.back()) cell = std::string(trim(cell));
    if (matrix.items.back().size() < 2) {
      throw InputError(path + ":" + std::to_string(ln + 1) +
                       ": need at least 2 rater columns");
    }
  }
  if (matrix.categories.empty()) {
    throw InputError(path + ": missing '#categories:' header");
  }
  for (std::size_t i = 0; i < matrix.items.size(); ++i) {
    if (matrix.items[i].size() != matrix.items[0].size()) {
      throw InputError(path + ": item " + std::to_string(i + 1) + " has " +
                       std::to_string(matrix.items[i].size()) + " columns, expected " +
                       std::to_string(matrix.items[0].size()));
    }
    for (const auto& cell : matrix.items[i]) {
      if (std::find(matrix.categories.begin(), matrix.categories.end(), cell) ==
          matrix.categories.end()) {
        throw InputError(path + ": item " + std::to_string(i + 1) + ": label '" + cell +
                         "' is not a declared category");
      }
    }
  }
  return matrix;
}

double free_marginal_kappa(const JudgmentMatrix& matrix) {
  const std::size_t k = matrix.categories.size();
  if (k < 2) throw InputError("free-marginal kappa needs at least 2 categories");
  if (matrix.items.empty()) throw InputError("free-marginal kappa needs at least 1 item");
  const std::size_t n = matrix.items[0].size();
  if (n < 2) throw InputError("free-marginal kappa needs at least 2 raters");
  double observed = 0.0;
  for (const auto& item : matrix.items) {
    if (item.size() != n) throw InputError("ragged judgment matrix");
    std::map<std::string, std::size_t> counts;
    for (const auto& label : item) ++counts[label];
    double agree = 0.0;
    for (const auto& [label, c] : counts) {
      agree += static_cast<double>(c) * static_cast<double>(c - 1);
    }
    observed += agree / (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  const double mean_observed = observed / static_cast<double>(matrix.items.size());
  const double chance = 1.0 / static_cast<double>(k);
  return (mean_observed - chance) / (1.0 - chance);
}

}  // namespace termdata
