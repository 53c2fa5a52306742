#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/guard_induction.hpp"
#include "qgen/lang_config.hpp"
#include "qgen/template.hpp"

namespace qgen {

// A usable training item: the context sentence containing the answer, the
// question, and the answer's token span (positions into sentence.nodes(),
// inclusive). All trees and strings are already preprocessed.
struct Triple {
  DepTree sentence;
  DepTree question;
  size_t span_begin = 0;
  size_t span_end = 0;
  std::string doc_id;
};

struct TripleSearch {
  std::optional<Triple> triple;        // set on a whole-token match
  bool subword = false;                // answer matches only below token level
  std::optional<size_t> sentence_index;  // matched sentence, either way
};

// First context sentence whose tokens contain the answer contiguously;
// failing that, first whose space-stripped text contains the space-stripped
// answer (the subword case, unusable for induction).
TripleSearch find_triple(const std::vector<DepTree>& context,
                         const DepTree& question, const std::string& answer);

// Sentence and question share at least one token, not counting the
// question word at the configured end of the question.
bool is_satisfactory(const DepTree& sentence, const DepTree& question,
                     const LangConfig& cfg);
bool is_satisfactory(const Triple& t, const LangConfig& cfg);

// Per target token: candidate expressions for sentence nodes matching by
// form (failing that, by lemma), sorted by distance from the root then by
// id. No candidates = the token stays a Constant.
struct LlteSlot {
  std::string token;
  std::vector<TemplateExpr> candidates;
};
using Llte = std::vector<LlteSlot>;

Llte build_llte(std::span<const std::string> target, const DepTree& s);

// Picks one candidate per slot minimizing the sum of |id_k - id_{k+1}| over
// adjacent non-Constant picks (Constants are transparent). Ties prefer the
// earlier candidate at the earliest differing slot.
std::vector<TemplateExpr> select_min_id_sum(const Llte& llte);

std::vector<TemplateExpr> sentence_transform(
    std::span<const std::string> target, const DepTree& s);

// Question tokens minus the question word, which becomes a leading/trailing
// Constant per cfg.qword_position.
std::vector<TemplateExpr> transform_question(const DepTree& question,
                                             const DepTree& s,
                                             const LangConfig& cfg);
std::vector<TemplateExpr> transform_answer(const Triple& t);

struct ShiftReduceStep {
  bool reduce = false;               // false = SHIFT
  std::vector<std::string> stack;    // serialized state after the action
  std::vector<std::string> buffer;
};
using ShiftReduceTrace = std::vector<ShiftReduceStep>;

// LIFO stack + FIFO buffer; REDUCE is preferred whenever the top two stack
// expressions can merge (both bracketed, non-lemma, sharing a non-empty
// chain prefix that at least one of them extends by at most one link).
// The merged subtree covers exactly the tokens the pair rendered: every
// other token of the common subtree becomes its own negative (plain for
// leaves, starred for inner nodes), so merging never changes the rendered
// output on the source sentence.
std::vector<TemplateExpr> shift_reduce(std::span<const TemplateExpr> exprs,
                                       const DepTree& s,
                                       ShiftReduceTrace* trace = nullptr);

// Collapses {X*} plus a plain negative for every direct child of X into a
// plain X, repeatedly. Expressions with unresolvable negatives pass through
// unchanged.
std::vector<TemplateExpr> merge_negatives(std::vector<TemplateExpr> exprs,
                                          const DepTree& s);

struct InductionStats {
  size_t total = 0;
  size_t matched = 0;               // whole-token answer match
  size_t satisfactory = 0;
  size_t subword = 0;
  size_t satisfactory_not_subword = 0;
  size_t templates = 0;
};

struct DatasetItem {
  std::string id;
  std::string doc_id;
  std::string answer;
  std::vector<DepTree> context;
  DepTree question;
};

struct InductionResult {
  std::vector<Template> templates;    // ids "template1", "template2", ...
  std::vector<SupportSet> supports;   // parallel to templates
  InductionStats stats;
};

// Full pipeline over a dataset: preprocess, match, transform, shift-reduce
// (question side falls back to the raw transformation when merging collapses
// it to a single expression), merge negatives, deduplicate structurally
// (ids ignored), then drop templates whose rarest constant has
// IDF = ln(N_docs/df) above ln 4. Deterministic for any thread count.
InductionResult induce(std::span<const DatasetItem> dataset,
                       const LangConfig& cfg, int threads = 1);

}  // namespace qgen
