#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgen {

// Raised for malformed CoNLL-U input or structurally invalid trees.
// Messages name the offending sentence index where known.
class ConlluError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DepNode {
  int id = 0;                       // 1-based token id; gaps allowed after filtering
  std::string form;
  std::string lemma;                // empty when the column was "_"
  std::string upos;
  std::vector<std::string> feats;   // "Key=Value", unique by key, sorted by key
  int head = 0;                     // 0 = attached to the artificial root
  std::string deprel;               // full label including subtype ("obl:tmod")
};

// A single dependency tree: nodes in surface order, exactly one node with
// head 0, every head resolvable, no cycles. Construction validates this.
class DepTree {
 public:
  DepTree() = default;
  explicit DepTree(std::vector<DepNode> nodes, std::string sent_id = "");

  const std::vector<DepNode>& nodes() const { return nodes_; }
  const std::string& sent_id() const { return sent_id_; }

  int root_id() const { return root_id_; }
  const DepNode& root() const { return node(root_id_); }

  bool has_node(int id) const;
  const DepNode& node(int id) const;
  // Child ids in surface order (ascending id).
  const std::vector<int>& children(int id) const;
  // Edge count from the root; root itself is 0.
  int depth(int id) const;
  // Node ids of the subtree rooted at id, ascending.
  std::vector<int> subtree_ids(int id) const;

  std::vector<std::string> forms() const;

 private:
  std::vector<DepNode> nodes_;
  std::string sent_id_;
  int root_id_ = 0;
  std::vector<int> index_;                    // id -> position+1, 0 = absent
  std::vector<std::vector<int>> children_;    // per position
  std::vector<int> depth_;                    // per position

  size_t pos(int id) const;
};

// Parses CoNLL-U v2 text into one tree per sentence. Sentences are separated
// by blank lines; "#" comment lines are skipped ("# sent_id = X" is kept as
// metadata); multiword ranges ("3-4") and empty nodes ("3.1") are skipped.
// A FEATS value of "_" means no features.
std::vector<DepTree> parse_conllu(std::string_view text);

// Debug serializer; unstored columns are emitted as "_".
// parse_conllu(to_conllu(trees)) preserves forms, lemmas, upos, feats,
// heads and deprels.
std::string to_conllu(const std::vector<DepTree>& trees);
std::string to_conllu(const DepTree& tree);

}  // namespace qgen
