#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/relchain.hpp"

namespace qgen {

// Walks the chain from the root. strict_ids additionally requires each
// link's id to match; otherwise the match is by label only and the smallest
// matching child id is taken at every step. nullptr when the walk fails.
const DepNode* resolve_chain(const DepTree& tree, const RelChain& chain,
                             bool strict_ids);

// Same walk starting at an arbitrary node (used for negatives).
const DepNode* resolve_chain_from(const DepTree& tree, int start_id,
                                  const RelChain& chain, bool strict_ids);

// Tokens of node_id's subtree after removing each resolvable negative
// (whole subtree, or only the node's own token for starred ones), in
// surface order. Unresolvable negatives are ignored.
std::vector<int> subtree_token_ids(const DepTree& tree, int node_id,
                                   std::span<const Negative> negatives,
                                   bool strict_ids);
std::string subtree_text(const DepTree& tree, int node_id,
                         std::span<const Negative> negatives,
                         bool strict_ids);

// "UPOS/Feat1=V1|Feat2=V2" with features sorted by key; bare UPOS when the
// node has no features.
std::string pos_morph(const DepNode& node);

// Root-to-node chain with concrete ids; nullopt when id is absent.
std::optional<RelChain> path_from_root(const DepTree& tree, int id);

}  // namespace qgen
