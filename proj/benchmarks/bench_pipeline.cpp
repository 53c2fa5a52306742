// Microbenchmarks for the hot paths: CoNLL-U parsing, template induction,
// shift-reduce merging, n-gram scoring and corpus BLEU.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/induction.hpp"
#include "qgen/lang_config.hpp"
#include "qgen/metrics.hpp"
#include "qgen/scoring.hpp"
#include "qgen/template.hpp"
#include "qgen/tree_ops.hpp"

using namespace qgen;

namespace {

DepNode mk(int id, std::string form, std::string lemma, std::string upos,
           int head, std::string deprel) {
  DepNode n;
  n.id = id;
  n.form = std::move(form);
  n.lemma = std::move(lemma);
  n.upos = std::move(upos);
  n.head = head;
  n.deprel = std::move(deprel);
  return n;
}

// "subjK verbKs objK with oblK and conjK every timeK"
DepTree sentence(int k) {
  auto w = [k](const char* stem) { return stem + std::to_string(k % 7); };
  return DepTree({
      mk(1, w("subj"), w("subj"), "PROPN", 2, "nsubj"),
      mk(2, w("verb") + "s", w("verb"), "VERB", 0, "root"),
      mk(3, w("obj"), w("obj"), "NOUN", 2, "obj"),
      mk(4, "with", "with", "ADP", 5, "case"),
      mk(5, w("obl"), w("obl"), "NOUN", 2, "obl"),
      mk(6, "and", "and", "CCONJ", 7, "cc"),
      mk(7, w("conj"), w("conj"), "NOUN", 5, "conj"),
      mk(8, "every", "every", "DET", 9, "det"),
      mk(9, w("time"), w("time"), "NOUN", 2, "obl:tmod"),
  });
}

DepTree question(int k) {
  auto w = [k](const char* stem) { return stem + std::to_string(k % 7); };
  return DepTree({
      mk(1, "When", "when", "ADV", 4, "advmod"),
      mk(2, "does", "do", "AUX", 4, "aux"),
      mk(3, w("subj"), w("subj"), "PROPN", 4, "nsubj"),
      mk(4, w("verb"), w("verb"), "VERB", 0, "root"),
      mk(5, w("obj"), w("obj"), "NOUN", 4, "obj"),
      mk(6, "with", "with", "ADP", 7, "case"),
      mk(7, w("obl"), w("obl"), "NOUN", 4, "obl"),
  });
}

std::vector<DatasetItem> dataset(int n) {
  std::vector<DatasetItem> items;
  for (int i = 0; i < n; ++i) {
    DatasetItem item;
    item.id = "item" + std::to_string(i);
    item.doc_id = "doc" + std::to_string(i % 8);
    item.answer = "every time" + std::to_string(i % 7);
    item.context.push_back(sentence(i));
    item.question = question(i);
    items.push_back(std::move(item));
  }
  return items;
}

void bm_parse_conllu(benchmark::State& state) {
  std::vector<DepTree> trees;
  for (int i = 0; i < 100; ++i) trees.push_back(sentence(i));
  std::string text = to_conllu(trees);
  for (auto _ : state) {
    std::vector<DepTree> parsed = parse_conllu(text);
    benchmark::DoNotOptimize(parsed.size());
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(bm_parse_conllu);

void bm_induce(benchmark::State& state) {
  std::vector<DatasetItem> data = dataset(static_cast<int>(state.range(0)));
  LangConfig cfg;
  for (auto _ : state) {
    InductionResult r = induce(data, cfg, 1);
    benchmark::DoNotOptimize(r.templates.size());
  }
}
BENCHMARK(bm_induce)->Arg(10)->Arg(50);

void bm_shift_reduce(benchmark::State& state) {
  DepTree s = sentence(0);
  LangConfig cfg;
  std::vector<TemplateExpr> exprs = transform_question(question(0), s, cfg);
  for (auto _ : state) {
    std::vector<TemplateExpr> merged = shift_reduce(exprs, s);
    benchmark::DoNotOptimize(merged.size());
  }
}
BENCHMARK(bm_shift_reduce);

void bm_ngram_score(benchmark::State& state) {
  Model m;
  LangConfig cfg;
  for (int i = 0; i < 200; ++i) {
    DepTree pre = preprocess_tree(sentence(i), cfg);
    std::vector<std::string> symbols;
    for (const DepNode& n : pre.nodes()) symbols.push_back(pos_morph(n));
    m.ngram.add_sentence(symbols);
  }
  m.finalize();
  DepTree probe = preprocess_tree(sentence(3), cfg);
  std::vector<std::string> symbols;
  for (const DepNode& n : probe.nodes()) symbols.push_back(pos_morph(n));
  for (auto _ : state)
    benchmark::DoNotOptimize(m.ngram.score(symbols, m.lambdas));
}
BENCHMARK(bm_ngram_score);

void bm_bleu(benchmark::State& state) {
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 100; ++i) {
    EvalPair p;
    for (const DepNode& n : sentence(i).nodes()) p.hyp.push_back(n.form);
    std::vector<std::string> ref;
    for (const DepNode& n : sentence(i + 1).nodes()) ref.push_back(n.form);
    p.refs.push_back(p.hyp);
    p.refs.push_back(std::move(ref));
    pairs.push_back(std::move(p));
  }
  for (auto _ : state) benchmark::DoNotOptimize(bleu(pairs, 4));
}
BENCHMARK(bm_bleu);

}  // namespace

BENCHMARK_MAIN();
