#include "qgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace qgen {

namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, long long>;

NgramCounts count_ngrams(const Tokens& toks, int n) {
  NgramCounts out;
  if (static_cast<int>(toks.size()) < n) return out;
  for (size_t i = 0; i + n <= toks.size(); ++i)
    ++out[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
  return out;
}

size_t lcs_length(const Tokens& a, const Tokens& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double bleu(std::span<const EvalPair> pairs, int max_order) {
  if (pairs.empty()) throw MetricError("bleu: empty corpus");
  if (max_order < 1 || max_order > 4)
    throw MetricError("bleu: order must be in 1..4");

  std::vector<long long> matched(max_order, 0), possible(max_order, 0);
  long long hyp_len = 0, ref_len = 0;

  for (const EvalPair& p : pairs) {
    if (p.refs.empty()) throw MetricError("bleu: item without references");
    hyp_len += static_cast<long long>(p.hyp.size());

    // Reference length closest to the hypothesis; ties go to the shorter.
    long long best_ref = static_cast<long long>(p.refs[0].size());
    for (const Tokens& r : p.refs) {
      long long len = static_cast<long long>(r.size());
      long long d = std::llabs(len - static_cast<long long>(p.hyp.size()));
      long long bd = std::llabs(best_ref - static_cast<long long>(p.hyp.size()));
      if (d < bd || (d == bd && len < best_ref)) best_ref = len;
    }
    ref_len += best_ref;

    for (int n = 1; n <= max_order; ++n) {
      NgramCounts hyp_counts = count_ngrams(p.hyp, n);
      NgramCounts max_ref;
      for (const Tokens& r : p.refs)
        for (const auto& [g, c] : count_ngrams(r, n))
          max_ref[g] = std::max(max_ref[g], c);
      for (const auto& [g, c] : hyp_counts) {
        auto it = max_ref.find(g);
        matched[n - 1] += std::min(c, it == max_ref.end() ? 0 : it->second);
      }
      if (static_cast<int>(p.hyp.size()) >= n)
        possible[n - 1] += static_cast<long long>(p.hyp.size()) - n + 1;
    }
  }

  double log_prec = 0.0;
  for (int n = 0; n < max_order; ++n) {
    if (matched[n] == 0 || possible[n] == 0) return 0.0;
    log_prec += std::log(static_cast<double>(matched[n]) /
                         static_cast<double>(possible[n]));
  }
  log_prec /= max_order;

  if (hyp_len == 0) return 0.0;
  double bp = hyp_len > ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) /
                                       static_cast<double>(hyp_len));
  return 100.0 * bp * std::exp(log_prec);
}

double rouge_l(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw MetricError("rouge_l: empty corpus");
  constexpr double kBeta = 1.2;

  double sum = 0.0;
  for (const EvalPair& p : pairs) {
    if (p.refs.empty()) throw MetricError("rouge_l: item without references");
    double best = 0.0;
    for (const Tokens& r : p.refs) {
      if (p.hyp.empty() || r.empty()) continue;
      double lcs = static_cast<double>(lcs_length(p.hyp, r));
      double prec = lcs / static_cast<double>(p.hyp.size());
      double rec = lcs / static_cast<double>(r.size());
      double denom = rec + kBeta * kBeta * prec;
      if (denom > 0.0)
        best = std::max(best, (1.0 + kBeta * kBeta) * rec * prec / denom);
    }
    sum += best;
  }
  return 100.0 * sum / static_cast<double>(pairs.size());
}

double cider(std::span<const EvalPair> pairs) {
  if (pairs.size() < 2)
    throw MetricError("cider: needs at least two items for idf");
  constexpr int kMaxOrder = 4;

  // Document frequency: items whose reference set contains the n-gram.
  std::map<std::vector<std::string>, long long> df;
  for (const EvalPair& p : pairs) {
    if (p.refs.empty()) throw MetricError("cider: item without references");
    std::set<std::vector<std::string>> seen;
    for (const Tokens& r : p.refs)
      for (int n = 1; n <= kMaxOrder; ++n)
        for (const auto& [g, c] : count_ngrams(r, n)) seen.insert(g);
    for (const auto& g : seen) ++df[g];
  }
  const double log_n = std::log(static_cast<double>(pairs.size()));

  auto tfidf = [&](const Tokens& toks, int n) {
    std::map<std::vector<std::string>, double> vec;
    for (const auto& [g, c] : count_ngrams(toks, n)) {
      auto it = df.find(g);
      double idf =
          log_n - std::log(std::max(1.0, it == df.end()
                                             ? 0.0
                                             : static_cast<double>(it->second)));
      vec[g] = static_cast<double>(c) * idf;
    }
    return vec;
  };
  auto norm = [](const std::map<std::vector<std::string>, double>& v) {
    double s = 0.0;
    for (const auto& [g, w] : v) s += w * w;
    return std::sqrt(s);
  };

  double corpus = 0.0;
  for (const EvalPair& p : pairs) {
    double item = 0.0;
    for (int n = 1; n <= kMaxOrder; ++n) {
      auto hv = tfidf(p.hyp, n);
      double hn = norm(hv);
      double acc = 0.0;
      for (const Tokens& r : p.refs) {
        auto rv = tfidf(r, n);
        double rn = norm(rv);
        if (hn == 0.0 || rn == 0.0) continue;
        double dot = 0.0;
        for (const auto& [g, w] : hv) {
          auto it = rv.find(g);
          if (it != rv.end()) dot += w * it->second;
        }
        acc += dot / (hn * rn);
      }
      item += acc / static_cast<double>(p.refs.size());
    }
    corpus += item / kMaxOrder;
  }
  return 10.0 * corpus / static_cast<double>(pairs.size());
}

JudgementMatrix::JudgementMatrix(std::vector<std::vector<int>> scores,
                                 int categories)
    : scores_(std::move(scores)), categories_(categories) {
  if (categories_ < 2) throw MetricError("judgements: need >= 2 categories");
  if (scores_.size() < 2) throw MetricError("judgements: need >= 2 items");
  size_t judges = scores_[0].size();
  if (judges < 2) throw MetricError("judgements: need >= 2 judges");
  for (const auto& row : scores_) {
    if (row.size() != judges)
      throw MetricError("judgements: ragged score matrix");
    for (int s : row)
      if (s < 1 || s > categories_)
        throw MetricError("judgements: score outside 1.." +
                          std::to_string(categories_));
  }
}

double randolph_kappa(const JudgementMatrix& j) {
  const auto& scores = j.scores();
  const double m = static_cast<double>(j.items());
  const double n = static_cast<double>(j.judges());
  double agree = 0.0;
  for (const auto& row : scores) {
    std::vector<int> per_cat(j.categories() + 1, 0);
    for (int s : row) ++per_cat[s];
    for (int c = 1; c <= j.categories(); ++c)
      agree += static_cast<double>(per_cat[c]) * (per_cat[c] - 1);
  }
  double po = agree / (m * n * (n - 1.0));
  double pe = 1.0 / j.categories();
  return (po - pe) / (1.0 - pe);
}

std::optional<double> gamma_n(const JudgementMatrix& j) {
  const auto& s = j.scores();
  long long concordant = 0, discordant = 0;
  for (size_t a = 0; a < j.judges(); ++a) {
    for (size_t b = a + 1; b < j.judges(); ++b) {
      for (size_t i = 0; i < j.items(); ++i) {
        for (size_t k = i + 1; k < j.items(); ++k) {
          int da = s[i][a] - s[k][a];
          int db = s[i][b] - s[k][b];
          if (da == 0 || db == 0) continue;
          if ((da > 0) == (db > 0))
            ++concordant;
          else
            ++discordant;
        }
      }
    }
  }
  if (concordant + discordant == 0) return std::nullopt;
  return static_cast<double>(concordant - discordant) /
         static_cast<double>(concordant + discordant);
}

OrdinalAggregate aggregate_ordinal(std::span<const int> scores, int ideal) {
  if (scores.empty()) throw MetricError("aggregate: empty score list");
  std::vector<int> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());

  OrdinalAggregate out;
  size_t n = sorted.size();
  out.median = n % 2 == 1 ? sorted[n / 2]
                          : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;

  std::map<int, size_t> freq;
  for (int s : sorted) ++freq[s];
  size_t best = 0;
  for (const auto& [v, c] : freq) best = std::max(best, c);
  std::vector<int> modes;
  for (const auto& [v, c] : freq)
    if (c == best) modes.push_back(v);
  out.mode = ideal == 1 ? modes.back() : modes.front();
  return out;
}

}  // namespace qgen
