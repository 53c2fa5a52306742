#pragma once

#include <string>
#include <vector>

namespace qgen {

// One step from a head to a dependent. id < 0 means "no id": the link then
// matches by label only (guards, hand-written templates).
struct RelLink {
  std::string deprel;
  int id = -1;

  friend bool operator==(const RelLink&, const RelLink&) = default;
};

// Path from the tree root to a node. Empty chain = the root itself.
struct RelChain {
  std::vector<RelLink> links;

  bool empty() const { return links.empty(); }
  size_t size() const { return links.size(); }

  friend bool operator==(const RelChain&, const RelChain&) = default;
};

// Longest common prefix; links compare by (deprel, id).
RelChain common_prefix(const RelChain& a, const RelChain& b);

// "rel#id.rel#id" (ids omitted when negative). No anchor symbol.
std::string chain_labels(const RelChain& chain, bool with_ids);

// Subtracted subtree inside a subtree-level expression. The chain is
// relative to the expression's own node. star = remove only that node's
// token, keeping its descendants.
struct Negative {
  RelChain chain;
  bool star = false;

  friend bool operator==(const Negative&, const Negative&) = default;
};

}  // namespace qgen
