#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/relchain.hpp"

namespace qgen {

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One precondition on the target tree, anchored at the root ("n"). Chains
// are label-only; resolution never looks at ids.
//   Exists/NotExists:   n.chain exists | not_exists
//   PosIs/PosIsNot:     n.chain.pos is TAG | is_not TAG
//   MorphHas/MorphHasNot: n.chain.morph has F=V|F=V  (has_not: empty
//   intersection). Pos/Morph clauses on an unresolvable chain are false in
//   both polarities.
struct GuardClause {
  enum class Kind { Exists, NotExists, PosIs, PosIsNot, MorphHas, MorphHasNot };

  Kind kind = Kind::Exists;
  RelChain chain;                    // ids always -1
  std::string tag;                   // PosIs/PosIsNot
  std::vector<std::string> feats;    // MorphHas/MorphHasNot, sorted by key

  friend bool operator==(const GuardClause&, const GuardClause&) = default;
};

// Conjunction of clauses targeting one template.
struct Guard {
  std::vector<GuardClause> clauses;
  std::string target;
};

// "clause, clause, ... -> templateID"
Guard parse_guard(std::string_view line);
std::string serialize_guard(const Guard& g);
std::string serialize_clause(const GuardClause& c);

bool eval_clause(const GuardClause& c, const DepTree& tree);
bool eval_guard(const Guard& g, const DepTree& tree);

}  // namespace qgen
