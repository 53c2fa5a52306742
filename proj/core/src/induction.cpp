#include "qgen/induction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "parallel.hpp"

namespace qgen {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}

}  // namespace

TripleSearch find_triple(const std::vector<DepTree>& context,
                         const DepTree& question, const std::string& answer) {
  TripleSearch result;
  std::vector<std::string> ans_toks = split_ws(answer);
  if (ans_toks.empty()) return result;

  for (size_t si = 0; si < context.size(); ++si) {
    const auto& nodes = context[si].nodes();
    if (nodes.size() < ans_toks.size()) continue;
    for (size_t b = 0; b + ans_toks.size() <= nodes.size(); ++b) {
      bool hit = true;
      for (size_t k = 0; k < ans_toks.size(); ++k) {
        if (nodes[b + k].form != ans_toks[k]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        Triple t;
        t.sentence = context[si];
        t.question = question;
        t.span_begin = b;
        t.span_end = b + ans_toks.size() - 1;
        result.triple = std::move(t);
        result.sentence_index = si;
        return result;
      }
    }
  }

  // No token-aligned match; look for a subword match.
  std::string flat_answer = strip_spaces(answer);
  if (!flat_answer.empty()) {
    for (size_t si = 0; si < context.size(); ++si) {
      std::string flat;
      for (const DepNode& n : context[si].nodes()) flat += n.form;
      if (flat.find(flat_answer) != std::string::npos) {
        result.subword = true;
        result.sentence_index = si;
        return result;
      }
    }
  }
  return result;
}

bool is_satisfactory(const DepTree& sentence, const DepTree& question,
                     const LangConfig& cfg) {
  const auto& qnodes = question.nodes();
  if (qnodes.empty()) return false;
  size_t skip = cfg.qword_position == QwordPosition::Start
                    ? 0
                    : qnodes.size() - 1;
  std::unordered_set<std::string> sent_forms;
  for (const DepNode& n : sentence.nodes()) sent_forms.insert(n.form);
  for (size_t i = 0; i < qnodes.size(); ++i) {
    if (i == skip) continue;
    if (sent_forms.count(qnodes[i].form)) return true;
  }
  return false;
}

bool is_satisfactory(const Triple& t, const LangConfig& cfg) {
  return is_satisfactory(t.sentence, t.question, cfg);
}

Llte build_llte(std::span<const std::string> target, const DepTree& s) {
  Llte llte;
  llte.reserve(target.size());
  for (const std::string& tok : target) {
    LlteSlot slot;
    slot.token = tok;
    std::vector<const DepNode*> matches;
    for (const DepNode& n : s.nodes())
      if (n.form == tok) matches.push_back(&n);
    bool lemma = false;
    if (matches.empty()) {
      for (const DepNode& n : s.nodes())
        if (!n.lemma.empty() && n.lemma == tok) matches.push_back(&n);
      lemma = !matches.empty();
    }
    std::sort(matches.begin(), matches.end(),
              [&](const DepNode* a, const DepNode* b) {
                int da = s.depth(a->id), db = s.depth(b->id);
                return da != db ? da < db : a->id < b->id;
              });
    for (const DepNode* n : matches) {
      RelChain chain = *path_from_root(s, n->id);
      slot.candidates.push_back(
          TemplateExpr::node(std::move(chain), lemma, n->id));
    }
    llte.push_back(std::move(slot));
  }
  return llte;
}

std::vector<TemplateExpr> select_min_id_sum(const Llte& llte) {
  // Variable slots in order; Constants carry no id and are skipped.
  std::vector<size_t> vars;
  for (size_t i = 0; i < llte.size(); ++i)
    if (!llte[i].candidates.empty()) vars.push_back(i);

  std::vector<size_t> choice(vars.size(), 0);
  if (!vars.empty()) {
    // suffix[k][c]: best achievable cost from slot k picking candidate c.
    std::vector<std::vector<long long>> suffix(vars.size());
    for (size_t k = vars.size(); k-- > 0;) {
      const auto& cands = llte[vars[k]].candidates;
      suffix[k].assign(cands.size(), 0);
      if (k + 1 < vars.size()) {
        const auto& next = llte[vars[k + 1]].candidates;
        for (size_t c = 0; c < cands.size(); ++c) {
          long long best = -1;
          for (size_t d = 0; d < next.size(); ++d) {
            long long cost =
                std::llabs(static_cast<long long>(cands[c].end_node_id) -
                           static_cast<long long>(next[d].end_node_id)) +
                suffix[k + 1][d];
            if (best < 0 || cost < best) best = cost;
          }
          suffix[k][c] = best;
        }
      }
    }
    // Earliest-candidate tie-break: smallest index achieving the optimum,
    // slot by slot.
    long long remaining = *std::min_element(suffix[0].begin(), suffix[0].end());
    int prev_id = -1;
    for (size_t k = 0; k < vars.size(); ++k) {
      const auto& cands = llte[vars[k]].candidates;
      for (size_t c = 0; c < cands.size(); ++c) {
        long long step =
            prev_id < 0 ? 0
                        : std::llabs(static_cast<long long>(prev_id) -
                                     static_cast<long long>(
                                         cands[c].end_node_id));
        if (step + suffix[k][c] == remaining) {
          choice[k] = c;
          remaining -= step;
          prev_id = cands[c].end_node_id;
          break;
        }
      }
    }
  }

  std::vector<TemplateExpr> out;
  out.reserve(llte.size());
  size_t vi = 0;
  for (size_t i = 0; i < llte.size(); ++i) {
    if (llte[i].candidates.empty()) {
      out.push_back(TemplateExpr::constant(llte[i].token));
    } else {
      out.push_back(llte[i].candidates[choice[vi]]);
      ++vi;
    }
  }
  return out;
}

std::vector<TemplateExpr> sentence_transform(
    std::span<const std::string> target, const DepTree& s) {
  return select_min_id_sum(build_llte(target, s));
}

std::vector<TemplateExpr> transform_question(const DepTree& question,
                                             const DepTree& s,
                                             const LangConfig& cfg) {
  std::vector<std::string> toks = question.forms();
  if (toks.empty()) return {};
  std::string qword;
  if (cfg.qword_position == QwordPosition::Start) {
    qword = toks.front();
    toks.erase(toks.begin());
  } else {
    qword = toks.back();
    toks.pop_back();
  }
  std::vector<TemplateExpr> out = sentence_transform(toks, s);
  if (cfg.qword_position == QwordPosition::Start)
    out.insert(out.begin(), TemplateExpr::constant(qword));
  else
    out.push_back(TemplateExpr::constant(qword));
  return out;
}

std::vector<TemplateExpr> transform_answer(const Triple& t) {
  std::vector<std::string> toks;
  for (size_t i = t.span_begin; i <= t.span_end; ++i)
    toks.push_back(t.sentence.nodes()[i].form);
  return sentence_transform(toks, t.sentence);
}

namespace {

bool mergeable_expr(const TemplateExpr& e) {
  return e.kind == TemplateExpr::Kind::Subtree ||
         (e.kind == TemplateExpr::Kind::Node && !e.lemma);
}

// Token ids an expression contributes when rendered with strict ids.
std::vector<int> rendered_ids(const TemplateExpr& e, const DepTree& s) {
  if (e.kind == TemplateExpr::Kind::Node) return {e.end_node_id};
  return subtree_token_ids(s, e.end_node_id, e.negatives, /*strict_ids=*/true);
}

RelChain path_between(const DepTree& s, int from, int to) {
  RelChain chain;
  int cur = to;
  while (cur != from) {
    const DepNode& n = s.node(cur);
    chain.links.push_back({n.deprel, n.id});
    cur = n.head;
  }
  std::reverse(chain.links.begin(), chain.links.end());
  return chain;
}

bool can_merge(const TemplateExpr& a, const TemplateExpr& b) {
  if (!mergeable_expr(a) || !mergeable_expr(b)) return false;
  RelChain common = common_prefix(a.chain, b.chain);
  if (common.empty()) return false;
  size_t extra =
      std::min(a.chain.size(), b.chain.size()) - common.size();
  return extra <= 1;
}

TemplateExpr merge_pair(const TemplateExpr& a, const TemplateExpr& b,
                        const DepTree& s) {
  RelChain common = common_prefix(a.chain, b.chain);
  const DepNode* top = resolve_chain(s, common, /*strict_ids=*/true);
  std::set<int> covered;
  for (int id : rendered_ids(a, s)) covered.insert(id);
  for (int id : rendered_ids(b, s)) covered.insert(id);

  std::vector<Negative> negs;
  for (int id : s.subtree_ids(top->id)) {
    if (covered.count(id)) continue;
    Negative neg;
    neg.chain = path_between(s, top->id, id);
    neg.star = !s.children(id).empty();
    negs.push_back(std::move(neg));
  }
  return TemplateExpr::subtree(std::move(common), std::move(negs), top->id);
}

}  // namespace

std::vector<TemplateExpr> shift_reduce(std::span<const TemplateExpr> exprs,
                                       const DepTree& s,
                                       ShiftReduceTrace* trace) {
  std::vector<TemplateExpr> stack;
  std::deque<TemplateExpr> buffer(exprs.begin(), exprs.end());

  auto record = [&](bool reduce) {
    if (!trace) return;
    ShiftReduceStep step;
    step.reduce = reduce;
    for (const TemplateExpr& e : stack)
      step.stack.push_back(serialize_exprs(std::span(&e, 1)));
    for (const TemplateExpr& e : buffer)
      step.buffer.push_back(serialize_exprs(std::span(&e, 1)));
    trace->push_back(std::move(step));
  };

  while (true) {
    if (stack.size() >= 2 &&
        can_merge(stack[stack.size() - 2], stack.back())) {
      TemplateExpr merged =
          merge_pair(stack[stack.size() - 2], stack.back(), s);
      stack.pop_back();
      stack.back() = std::move(merged);
      record(true);
    } else if (!buffer.empty()) {
      stack.push_back(std::move(buffer.front()));
      buffer.pop_front();
      record(false);
    } else {
      break;
    }
  }
  return stack;
}

std::vector<TemplateExpr> merge_negatives(std::vector<TemplateExpr> exprs,
                                          const DepTree& s) {
  for (TemplateExpr& e : exprs) {
    if (e.kind != TemplateExpr::Kind::Subtree || e.negatives.empty()) continue;
    const DepNode* top = resolve_chain(s, e.chain, /*strict_ids=*/true);
    if (!top) continue;

    std::map<int, bool> negs;  // node id -> star
    bool resolvable = true;
    for (const Negative& neg : e.negatives) {
      const DepNode* n =
          resolve_chain_from(s, top->id, neg.chain, /*strict_ids=*/true);
      if (!n) {
        resolvable = false;
        break;
      }
      negs[n->id] = neg.star;
    }
    if (!resolvable) continue;

    // {X*} + a plain negative per direct child of X -> plain X.
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [id, star] : negs) {
        if (!star) continue;
        const std::vector<int>& kids = s.children(id);
        bool all_plain = std::all_of(kids.begin(), kids.end(), [&](int c) {
          auto it = negs.find(c);
          return it != negs.end() && !it->second;
        });
        if (all_plain) {
          star = false;
          for (int c : kids) negs.erase(c);
          changed = true;
          break;
        }
      }
    }

    std::vector<Negative> rebuilt;
    for (const auto& [id, star] : negs) {
      Negative neg;
      neg.chain = path_between(s, top->id, id);
      neg.star = star;
      rebuilt.push_back(std::move(neg));
    }
    e.negatives = std::move(rebuilt);
  }
  return exprs;
}

namespace {

struct ItemOutcome {
  bool matched = false;
  bool satisfactory = false;
  bool subword = false;
  std::optional<Template> tpl;  // unnamed; set when usable
  RootSignature root;
  std::string doc_id;
  std::vector<std::string> doc_tokens;  // context + question forms
};

ItemOutcome process_item(const DatasetItem& item, const LangConfig& cfg) {
  ItemOutcome out;
  out.doc_id = item.doc_id;

  std::vector<DepTree> context;
  context.reserve(item.context.size());
  for (const DepTree& t : item.context)
    context.push_back(preprocess_tree(t, cfg));
  DepTree question = preprocess_tree(item.question, cfg);
  std::string answer = preprocess_text(item.answer, cfg);

  for (const DepTree& t : context)
    for (const DepNode& n : t.nodes()) out.doc_tokens.push_back(n.form);
  for (const DepNode& n : question.nodes()) out.doc_tokens.push_back(n.form);

  TripleSearch search = find_triple(context, question, answer);
  out.subword = search.subword;
  if (search.sentence_index)
    out.satisfactory =
        is_satisfactory(context[*search.sentence_index], question, cfg);
  if (!search.triple) return out;
  out.matched = true;
  if (!out.satisfactory) return out;

  const Triple& triple = *search.triple;
  const DepTree& s = triple.sentence;

  std::vector<TemplateExpr> q_raw = transform_question(question, s, cfg);
  std::vector<TemplateExpr> q_merged = shift_reduce(q_raw, s);
  if (q_merged.size() == 1) q_merged = q_raw;  // degenerate single expression
  q_merged = merge_negatives(std::move(q_merged), s);

  std::vector<TemplateExpr> a_merged =
      merge_negatives(shift_reduce(transform_answer(triple), s), s);

  bool has_slot = false;
  for (const auto& e : q_merged)
    if (e.kind != TemplateExpr::Kind::Constant) has_slot = true;
  for (const auto& e : a_merged)
    if (e.kind != TemplateExpr::Kind::Constant) has_slot = true;
  if (!has_slot || q_merged.empty() || a_merged.empty()) return out;

  Template tpl;
  tpl.question = std::move(q_merged);
  tpl.answer = std::move(a_merged);
  out.tpl = std::move(tpl);

  const DepNode& root = s.root();
  out.root.upos = root.upos;
  out.root.morph = root.feats;
  out.root.has_aux = false;
  for (int c : s.children(root.id))
    if (s.node(c).deprel == "aux") out.root.has_aux = true;
  return out;
}

}  // namespace

InductionResult induce(std::span<const DatasetItem> dataset,
                       const LangConfig& cfg, int threads) {
  std::vector<ItemOutcome> outcomes(dataset.size());
  detail::parallel_for(dataset.size(), threads, [&](size_t i) {
    outcomes[i] = process_item(dataset[i], cfg);
  });

  InductionResult result;
  result.stats.total = dataset.size();

  // Document vocabulary for the constant IDF filter.
  std::map<std::string, std::set<std::string>> doc_vocab;
  for (const ItemOutcome& o : outcomes) {
    auto& vocab = doc_vocab[o.doc_id];
    for (const std::string& w : o.doc_tokens) vocab.insert(w);
  }
  const size_t n_docs = doc_vocab.size();
  auto max_constant_idf = [&](const Template& t) {
    double best = 0.0;
    auto scan = [&](const std::vector<TemplateExpr>& side) {
      for (const TemplateExpr& e : side) {
        if (e.kind != TemplateExpr::Kind::Constant) continue;
        size_t df = 0;
        for (const auto& [doc, vocab] : doc_vocab)
          if (vocab.count(e.text)) ++df;
        double idf = df == 0
                         ? std::numeric_limits<double>::infinity()
                         : std::log(static_cast<double>(n_docs) /
                                    static_cast<double>(df));
        best = std::max(best, idf);
      }
    };
    scan(t.question);
    scan(t.answer);
    return best;
  };

  std::vector<Template> kept;
  std::vector<SupportSet> supports;
  std::unordered_map<std::string, size_t> seen;  // structural key -> index

  for (const ItemOutcome& o : outcomes) {
    if (o.matched) ++result.stats.matched;
    if (o.satisfactory) ++result.stats.satisfactory;
    if (o.subword) ++result.stats.subword;
    if (o.satisfactory && !o.subword) ++result.stats.satisfactory_not_subword;
    if (!o.tpl) continue;

    std::string key = structural_key(*o.tpl);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), kept.size());
      kept.push_back(*o.tpl);
      supports.push_back({"", {o.root}});
    } else {
      supports[it->second].roots.push_back(o.root);
    }
  }

  // Rare-constant filter; ids are assigned densely after it.
  const double threshold = std::log(4.0);
  for (size_t i = 0; i < kept.size(); ++i) {
    if (max_constant_idf(kept[i]) > threshold) continue;
    Template t = std::move(kept[i]);
    SupportSet s = std::move(supports[i]);
    t.id = "template" + std::to_string(result.templates.size() + 1);
    s.template_id = t.id;
    result.templates.push_back(std::move(t));
    result.supports.push_back(std::move(s));
  }
  result.stats.templates = result.templates.size();
  return result;
}

}  // namespace qgen
