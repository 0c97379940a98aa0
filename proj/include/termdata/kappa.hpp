#ifndef TERMDATA_KAPPA_HPP
#define TERMDATA_KAPPA_HPP

#include <string>
#include <vector>

namespace termdata {

// N items x n raters of categorical labels from a declared k-category set.
struct JudgmentMatrix {
  std::vector<std::string> categories;
  std::vector<std::vector<std::string>> items;  // each row: one label per rater
};

// TSV, one item per row, one column per rater, with a header line
// "#categories: A,B,C" declaring the category set.
JudgmentMatrix load_judgments(const std::string& path);

// Randolph's free-marginal kappa: (Po - 1/k) / (1 - 1/k), with per-item
// agreement sum_c n_c (n_c - 1) / (n (n - 1)).
double free_marginal_kappa(const JudgmentMatrix& matrix);

}  // namespace termdata

#endif  // TERMDATA_KAPPA_HPP
