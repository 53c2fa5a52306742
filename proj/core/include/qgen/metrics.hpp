#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgen {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One evaluation item: a hypothesis against one or more references, all
// pre-tokenized.
struct EvalPair {
  std::vector<std::string> hyp;
  std::vector<std::vector<std::string>> refs;  // nonempty
};

// Corpus-level BLEU over orders 1..max_order: clipped n-gram precision,
// geometric mean with uniform weights, brevity penalty against the closest
// reference length (ties to the shorter). Scale 0..100, no smoothing.
double bleu(std::span<const EvalPair> pairs, int max_order);

// Mean sentence-level longest-common-subsequence F-score (beta = 1.2,
// recall-weighted), max over references. Scale 0..100.
double rouge_l(std::span<const EvalPair> pairs);

// Mean over n = 1..4 of the average cosine similarity between tf-idf
// n-gram vectors of the hypothesis and each reference, idf taken over the
// per-item reference sets, averaged over items and scaled by 10. Needs at
// least two items for document statistics.
double cider(std::span<const EvalPair> pairs);

// M items x N judges of ordinal scores in 1..categories.
class JudgementMatrix {
 public:
  JudgementMatrix(std::vector<std::vector<int>> scores, int categories);

  const std::vector<std::vector<int>>& scores() const { return scores_; }
  int categories() const { return categories_; }
  size_t items() const { return scores_.size(); }
  size_t judges() const { return scores_.empty() ? 0 : scores_[0].size(); }

 private:
  std::vector<std::vector<int>> scores_;
  int categories_;
};

// Free-marginal chance-corrected agreement:
//   kappa = (P_o - 1/categories) / (1 - 1/categories),
// P_o the observed pairwise agreement across judges per item.
double randolph_kappa(const JudgementMatrix& j);

// Rank concordance generalized to N judges: over every judge pair and item
// pair, (concordant - discordant) / (concordant + discordant); pairs tied
// by either judge count toward neither. nullopt when no untied pair exists.
std::optional<double> gamma_n(const JudgementMatrix& j);

struct OrdinalAggregate {
  double median = 0.0;
  int mode = 0;
};

// Sample median plus the most frequent score; a multimodal tie resolves to
// the score farthest from the ideal end of the scale (smallest when ideal
// is the top category, largest when ideal is 1).
OrdinalAggregate aggregate_ordinal(std::span<const int> scores, int ideal);

}  // namespace qgen
