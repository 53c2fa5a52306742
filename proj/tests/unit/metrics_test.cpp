#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "qgen/metrics.hpp"

using namespace qgen;

namespace {

std::vector<std::string> toks(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    size_t j = text.find(' ', i);
    if (j == std::string::npos) j = text.size();
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

EvalPair pair(const std::string& hyp, std::vector<std::string> refs) {
  EvalPair p;
  p.hyp = toks(hyp);
  for (const std::string& r : refs) p.refs.push_back(toks(r));
  return p;
}

}  // namespace

TEST_CASE("perfect hypotheses reach the ceiling of every metric") {
  std::vector<EvalPair> pairs{
      pair("the quick brown fox jumps", {"the quick brown fox jumps"}),
      pair("pack my box with five dozen", {"pack my box with five dozen"}),
  };
  for (int n = 1; n <= 4; ++n)
    CHECK(bleu(pairs, n) == doctest::Approx(100.0));
  CHECK(rouge_l(pairs) == doctest::Approx(100.0));
  CHECK(cider(pairs) == doctest::Approx(10.0));
}

TEST_CASE("the brevity penalty uses the closest reference length") {
  std::vector<EvalPair> shorter{pair("the cat sat", {"the cat sat down"})};
  CHECK(bleu(shorter, 1) ==
        doctest::Approx(100.0 * std::exp(1.0 - 4.0 / 3.0)));

  // equidistant references: the shorter one wins, so no penalty here
  std::vector<EvalPair> tie{pair("a b c d", {"a b", "a b c d e f"})};
  CHECK(bleu(tie, 1) == doctest::Approx(100.0));
}

TEST_CASE("n-gram precision clips at the reference count") {
  // "the" occurs once in the reference: 1 clipped match out of 4
  std::vector<EvalPair> rep{pair("the the the the", {"the cat"})};
  CHECK(bleu(rep, 1) == doctest::Approx(25.0));
  std::vector<EvalPair> two{pair("the the the the", {"the cat the mat"})};
  CHECK(bleu(two, 1) == doctest::Approx(50.0));
}

TEST_CASE("precision pools over the corpus instead of averaging items") {
  std::vector<EvalPair> pairs{
      pair("a", {"a"}),
      pair("b b b", {"c"}),
  };
  // pooled: (1+0)/(1+3); an item average would give 50
  CHECK(bleu(pairs, 1) == doctest::Approx(25.0));
}

TEST_CASE("a zero count at any order zeroes the score") {
  std::vector<EvalPair> pairs{pair("a b c", {"a b c"})};
  CHECK(bleu(pairs, 3) == doctest::Approx(100.0));
  CHECK(bleu(pairs, 4) == 0.0);  // no 4-grams exist

  std::vector<EvalPair> miss{pair("a b", {"x y"})};
  CHECK(bleu(miss, 1) == 0.0);
}

TEST_CASE("bleu rejects empty corpora and bad orders") {
  std::vector<EvalPair> pairs{pair("a", {"a"}), pair("b", {"b"})};
  CHECK_THROWS_AS(bleu({}, 1), MetricError);
  CHECK_THROWS_AS(bleu(pairs, 0), MetricError);
  CHECK_THROWS_AS(bleu(pairs, 5), MetricError);
  std::vector<EvalPair> norefs(1);
  norefs[0].hyp = toks("a");
  CHECK_THROWS_AS(bleu(norefs, 1), MetricError);
}

TEST_CASE("subsequence overlap is recall-weighted") {
  std::vector<EvalPair> sub{pair("a b c", {"a x c"})};
  CHECK(rouge_l(sub) == doctest::Approx(100.0 * 2.0 / 3.0));

  // precision 0.5, recall 1.0: the score leans toward recall
  std::vector<EvalPair> lean{pair("a b c d", {"a b"})};
  CHECK(rouge_l(lean) == doctest::Approx(100.0 * 1.22 / 1.72));
}

TEST_CASE("the best reference counts and items average") {
  std::vector<EvalPair> best{pair("a b c", {"z z z", "a b c"})};
  CHECK(rouge_l(best) == doctest::Approx(100.0));

  std::vector<EvalPair> mixed{
      pair("a b c", {"a b c"}),
      pair("a b c", {"a x c"}),
  };
  CHECK(rouge_l(mixed) == doctest::Approx(100.0 * (1.0 + 2.0 / 3.0) / 2.0));

  std::vector<EvalPair> with_empty{
      pair("a b c", {"a b c"}),
      pair("", {"a b c"}),
  };
  CHECK(rouge_l(with_empty) == doctest::Approx(50.0));
}

TEST_CASE("short references zero the high orders only") {
  std::vector<EvalPair> pairs{
      pair("a b", {"a b"}),
      pair("c d", {"c d"}),
  };
  // cosine 1 at orders 1 and 2, nothing at 3 and 4
  CHECK(cider(pairs) == doctest::Approx(5.0));
}

TEST_CASE("disjoint hypotheses score zero overlap") {
  std::vector<EvalPair> pairs{
      pair("x y z w", {"a b c d"}),
      pair("e f g h", {"e f g h"}),
  };
  CHECK(cider(pairs) == doctest::Approx(5.0));  // 0 and 10, averaged
}

TEST_CASE("idf statistics need at least two items") {
  std::vector<EvalPair> one{pair("a b", {"a b"})};
  CHECK_THROWS_AS(cider(one), MetricError);
}

TEST_CASE("judgement matrices validate their shape and range") {
  CHECK_THROWS_AS(JudgementMatrix({{1, 2}}, 4), MetricError);  // one item
  CHECK_THROWS_AS(JudgementMatrix({{1}, {2}}, 4), MetricError);  // one judge
  CHECK_THROWS_AS(JudgementMatrix({{1, 2}, {3}}, 4), MetricError);  // ragged
  CHECK_THROWS_AS(JudgementMatrix({{0, 2}, {3, 4}}, 4), MetricError);
  CHECK_THROWS_AS(JudgementMatrix({{1, 5}, {2, 2}}, 4), MetricError);
  CHECK_THROWS_AS(JudgementMatrix({{1, 1}, {1, 1}}, 1), MetricError);
  JudgementMatrix ok({{1, 4}, {2, 2}}, 4);
  CHECK(ok.items() == 2);
  CHECK(ok.judges() == 2);
}

TEST_CASE("chance-corrected agreement spans the full range") {
  // unanimous judges agree perfectly
  CHECK(randolph_kappa(JudgementMatrix({{2, 2}, {3, 3}}, 4)) ==
        doctest::Approx(1.0));
  // total disagreement on a four-point scale
  CHECK(randolph_kappa(JudgementMatrix({{1, 2}, {3, 4}}, 4)) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  // observed agreement 2/3 on a binary scale
  CHECK(randolph_kappa(JudgementMatrix({{1, 1}, {1, 2}, {2, 2}}, 2)) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("rank concordance counts judge pairs over item pairs") {
  auto g = gamma_n(JudgementMatrix({{1, 1}, {2, 3}, {3, 2}}, 3));
  REQUIRE(g);
  CHECK(*g == doctest::Approx(1.0 / 3.0));

  auto perfect = gamma_n(JudgementMatrix({{1, 1}, {2, 2}, {3, 3}}, 3));
  REQUIRE(perfect);
  CHECK(*perfect == doctest::Approx(1.0));
  auto reversed = gamma_n(JudgementMatrix({{1, 3}, {2, 2}, {3, 1}}, 3));
  REQUIRE(reversed);
  CHECK(*reversed == doctest::Approx(-1.0));

  // all ties: no usable pair at all
  CHECK(!gamma_n(JudgementMatrix({{2, 2}, {2, 2}}, 3)));

  // three judges pool their counts before the ratio
  auto pooled = gamma_n(JudgementMatrix({{1, 3, 1}, {2, 2, 1}, {3, 1, 2}}, 3));
  REQUIRE(pooled);
  CHECK(*pooled == doctest::Approx(-3.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("ordinal aggregates take the median and a tie-broken mode") {
  std::vector<int> even{1, 2, 3, 4};
  OrdinalAggregate a = aggregate_ordinal(even, 4);
  CHECK(a.median == doctest::Approx(2.5));
  CHECK(a.mode == 1);  // four-way tie, worst is the smallest when 4 is ideal

  OrdinalAggregate b = aggregate_ordinal(even, 1);
  CHECK(b.mode == 4);  // worst is the largest when 1 is ideal

  std::vector<int> odd{5, 1, 3};
  CHECK(aggregate_ordinal(odd, 5).median == doctest::Approx(3.0));

  std::vector<int> unique{2, 2, 3};
  CHECK(aggregate_ordinal(unique, 1).mode == 2);

  std::vector<int> bimodal{1, 1, 2, 2, 5};
  CHECK(aggregate_ordinal(bimodal, 5).mode == 1);
}
