#include "qgen/tree_ops.hpp"

#include <algorithm>

namespace qgen {

namespace {

const DepNode* walk(const DepTree& tree, int start_id, const RelChain& chain,
                    bool strict_ids) {
  if (!tree.has_node(start_id)) return nullptr;
  int cur = start_id;
  for (const RelLink& link : chain.links) {
    int next = 0;
    for (int c : tree.children(cur)) {  // ascending, so first hit is smallest
      const DepNode& n = tree.node(c);
      if (n.deprel != link.deprel) continue;
      if (strict_ids && n.id != link.id) continue;
      next = c;
      break;
    }
    if (next == 0) return nullptr;
    cur = next;
  }
  return &tree.node(cur);
}

}  // namespace

const DepNode* resolve_chain(const DepTree& tree, const RelChain& chain,
                             bool strict_ids) {
  return walk(tree, tree.root_id(), chain, strict_ids);
}

const DepNode* resolve_chain_from(const DepTree& tree, int start_id,
                                  const RelChain& chain, bool strict_ids) {
  return walk(tree, start_id, chain, strict_ids);
}

std::vector<int> subtree_token_ids(const DepTree& tree, int node_id,
                                   std::span<const Negative> negatives,
                                   bool strict_ids) {
  std::vector<int> ids = tree.subtree_ids(node_id);
  std::vector<bool> removed(ids.size(), false);
  auto remove_id = [&](int id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it != ids.end() && *it == id)
      removed[static_cast<size_t>(it - ids.begin())] = true;
  };
  for (const Negative& neg : negatives) {
    const DepNode* n = resolve_chain_from(tree, node_id, neg.chain, strict_ids);
    if (!n) continue;
    if (neg.star) {
      remove_id(n->id);
    } else {
      for (int id : tree.subtree_ids(n->id)) remove_id(id);
    }
  }
  std::vector<int> out;
  for (size_t i = 0; i < ids.size(); ++i)
    if (!removed[i]) out.push_back(ids[i]);
  return out;
}

std::string subtree_text(const DepTree& tree, int node_id,
                         std::span<const Negative> negatives,
                         bool strict_ids) {
  std::string out;
  for (int id : subtree_token_ids(tree, node_id, negatives, strict_ids)) {
    if (!out.empty()) out.push_back(' ');
    out += tree.node(id).form;
  }
  return out;
}

std::string pos_morph(const DepNode& node) {
  if (node.feats.empty()) return node.upos;
  std::string out = node.upos;
  out.push_back('/');
  for (size_t i = 0; i < node.feats.size(); ++i) {
    if (i) out.push_back('|');
    out += node.feats[i];
  }
  return out;
}

std::optional<RelChain> path_from_root(const DepTree& tree, int id) {
  if (!tree.has_node(id)) return std::nullopt;
  RelChain chain;
  int cur = id;
  while (cur != tree.root_id()) {
    const DepNode& n = tree.node(cur);
    chain.links.push_back({n.deprel, n.id});
    cur = n.head;
  }
  std::reverse(chain.links.begin(), chain.links.end());
  return chain;
}

RelChain common_prefix(const RelChain& a, const RelChain& b) {
  RelChain out;
  size_t n = std::min(a.links.size(), b.links.size());
  for (size_t i = 0; i < n; ++i) {
    if (!(a.links[i] == b.links[i])) break;
    out.links.push_back(a.links[i]);
  }
  return out;
}

std::string chain_labels(const RelChain& chain, bool with_ids) {
  std::string out;
  for (size_t i = 0; i < chain.links.size(); ++i) {
    if (i) out.push_back('.');
    out += chain.links[i].deprel;
    if (with_ids && chain.links[i].id >= 0) {
      out.push_back('#');
      out += std::to_string(chain.links[i].id);
    }
  }
  return out;
}

}  // namespace qgen
