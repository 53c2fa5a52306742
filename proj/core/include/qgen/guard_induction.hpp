#pragma once

#include <string>
#include <vector>

#include "qgen/guard.hpp"
#include "qgen/template.hpp"

namespace qgen {

// What a template needs to remember about one sentence it was induced from.
struct RootSignature {
  std::string upos;
  std::vector<std::string> morph;  // root feats, sorted by key
  bool has_aux = false;            // root has a direct "aux" dependent

  friend bool operator==(const RootSignature&, const RootSignature&) = default;
};

struct SupportSet {
  std::string template_id;
  std::vector<RootSignature> roots;  // one per supporting sentence, in order
};

// Clauses shared by all guards of a template:
//  - an exists-clause per distinct non-negative expression chain (question
//    then answer order; the empty root chain is omitted),
//  - MorphHasNot(nsubj-prefix, PronType=Rel) when an answer expression's
//    chain contains an nsubj link,
//  - NotExists(aux) when the template uses the root and every supporting
//    root is a VERB without an aux dependent.
std::vector<GuardClause> base_guard(const Template& t, const SupportSet& s);

// One clause list per distinct supporting (upos, morph) signature, in first
// occurrence order: MorphHas(root feats) when non-empty, then PosIs(upos).
std::vector<std::vector<GuardClause>> complementary_guards(const SupportSet& s);

// complementary x base, each targeting t.id.
std::vector<Guard> induce_guards(const Template& t, const SupportSet& s);

}  // namespace qgen
