#include "qgen/guard_induction.hpp"

#include <algorithm>

namespace qgen {

namespace {

RelChain strip_ids(const RelChain& chain) {
  RelChain out;
  out.links.reserve(chain.size());
  for (const RelLink& l : chain.links) out.links.push_back({l.deprel, -1});
  return out;
}

void add_exists(std::vector<GuardClause>& clauses, const RelChain& chain) {
  GuardClause c;
  c.kind = GuardClause::Kind::Exists;
  c.chain = strip_ids(chain);
  if (std::find(clauses.begin(), clauses.end(), c) == clauses.end())
    clauses.push_back(std::move(c));
}

}  // namespace

std::vector<GuardClause> base_guard(const Template& t, const SupportSet& s) {
  std::vector<GuardClause> clauses;
  bool uses_root = false;
  bool answer_nsubj = false;
  RelChain nsubj_prefix;

  auto scan = [&](const std::vector<TemplateExpr>& side, bool answer) {
    for (const TemplateExpr& e : side) {
      if (e.kind == TemplateExpr::Kind::Constant) continue;
      if (e.chain.empty()) {
        uses_root = true;
        continue;
      }
      add_exists(clauses, e.chain);
      if (!answer) continue;
      for (size_t i = 0; i < e.chain.size(); ++i) {
        if (e.chain.links[i].deprel == "nsubj") {
          if (!answer_nsubj) {
            RelChain prefix;
            prefix.links.assign(e.chain.links.begin(),
                                e.chain.links.begin() + i + 1);
            nsubj_prefix = strip_ids(prefix);
          }
          answer_nsubj = true;
          break;
        }
      }
    }
  };
  scan(t.question, false);
  scan(t.answer, true);

  if (answer_nsubj) {
    GuardClause c;
    c.kind = GuardClause::Kind::MorphHasNot;
    c.chain = nsubj_prefix;
    c.feats = {"PronType=Rel"};
    clauses.push_back(std::move(c));
  }

  if (uses_root) {
    bool bare_verb = !s.roots.empty();
    for (const RootSignature& r : s.roots)
      if (r.upos != "VERB" || r.has_aux) bare_verb = false;
    if (bare_verb) {
      GuardClause c;
      c.kind = GuardClause::Kind::NotExists;
      c.chain.links.push_back({"aux", -1});
      clauses.push_back(std::move(c));
    }
  }
  return clauses;
}

std::vector<std::vector<GuardClause>> complementary_guards(
    const SupportSet& s) {
  std::vector<std::vector<GuardClause>> out;
  std::vector<std::pair<std::string, std::vector<std::string>>> seen;
  for (const RootSignature& r : s.roots) {
    auto key = std::make_pair(r.upos, r.morph);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);

    std::vector<GuardClause> clauses;
    if (!r.morph.empty()) {
      GuardClause morph;
      morph.kind = GuardClause::Kind::MorphHas;
      morph.feats = r.morph;
      clauses.push_back(std::move(morph));
    }
    GuardClause pos;
    pos.kind = GuardClause::Kind::PosIs;
    pos.tag = r.upos;
    clauses.push_back(std::move(pos));
    out.push_back(std::move(clauses));
  }
  return out;
}

std::vector<Guard> induce_guards(const Template& t, const SupportSet& s) {
  std::vector<GuardClause> base = base_guard(t, s);
  std::vector<Guard> out;
  for (auto& comp : complementary_guards(s)) {
    Guard g;
    g.clauses = comp;
    g.clauses.insert(g.clauses.end(), base.begin(), base.end());
    g.target = t.id;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace qgen
