#ifndef TERMDATA_TTABLE_HPP
#define TERMDATA_TTABLE_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace termdata {

// String <-> id mapping; ids assigned in first-appearance order.
class Vocab {
 public:
  int add(const std::string& word) {
    const auto it = ids_.find(word);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(words_.size());
    ids_.emplace(word, id);
    words_.push_back(word);
    return id;
  }

  // -1 when absent.
  int find(const std::string& word) const {
    const auto it = ids_.find(word);
    return it == ids_.end() ? -1 : it->second;
  }

  const std::string& word(int id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> words_;
};

// Conditional probabilities t(f|e), e ranging over conditioning-side ids
// (0 = NULL) and f over output-side ids. Unseen pairs have no entry.
// Rows are ordered maps so that sums and dumps are insertion-order
// independent and bit-reproducible.
class TranslationTable {
 public:
  void resize(std::size_t conditioning_types) { rows_.resize(conditioning_types); }
  std::size_t conditioning_size() const { return rows_.size(); }

  double prob(int e, int f) const {
    const auto& row = rows_[e];
    const auto it = row.find(f);
    return it == row.end() ? 0.0 : it->second;
  }

  double prob_or(int e, int f, double fallback) const {
    const auto& row = rows_[e];
    const auto it = row.find(f);
    return it == row.end() ? fallback : it->second;
  }

  void add(int e, int f, double value) {
    rows_[e][f] += value;
    outputs_.insert(f);
  }

  const std::map<int, double>& row(int e) const { return rows_[e]; }
  const std::vector<std::map<int, double>>& rows() const { return rows_; }

  // True iff any entry t(f|.) exists for this output id.
  bool known_output(int f) const { return outputs_.count(f) != 0; }

  // Per-row add-alpha normalization: t(f|e) = (c + alpha) / (sum + alpha * k)
  // over the row's observed support of size k. alpha = 0 is plain MLE.
  void normalize(double alpha) {
    for (auto& row : rows_) {
      if (row.empty()) continue;
      double sum = 0.0;
      for (const auto& [f, c] : row) sum += c;
      const double denom = sum + alpha * static_cast<double>(row.size());
      for (auto& [f, c] : row) c = (c + alpha) / denom;
    }
  }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
  }

 private:
  std::vector<std::map<int, double>> rows_;
  std::unordered_set<int> outputs_;
};

}  // namespace termdata

#endif  // TERMDATA_TTABLE_HPP
