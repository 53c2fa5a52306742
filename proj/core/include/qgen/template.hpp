#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/relchain.hpp"
#include "qgen/tree_ops.hpp"

namespace qgen {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One slot of a template.
//  Constant: literal text, no brackets inside.
//  Node:     [r.rel#id...] single token; with .lemma, the node's lemma.
//  Subtree:  <r.rel#id... - neg - neg*> whole subtree minus negatives.
struct TemplateExpr {
  enum class Kind { Constant, Node, Subtree };

  Kind kind = Kind::Constant;
  std::string text;                  // Constant only
  RelChain chain;                    // Node/Subtree; empty = root
  bool lemma = false;                // Node only
  std::vector<Negative> negatives;   // Subtree only
  // Induction-time id of the chain's end node (root id for empty chains);
  // 0 when unknown. Not serialized for root expressions.
  int end_node_id = 0;

  static TemplateExpr constant(std::string t);
  static TemplateExpr node(RelChain c, bool lemma, int end_id);
  static TemplateExpr subtree(RelChain c, std::vector<Negative> negs,
                              int end_id);
};

struct Template {
  std::string id;
  std::vector<TemplateExpr> question;
  std::vector<TemplateExpr> answer;
};

// One line: "ID\tquestion-exprs => answer-exprs". Bracketed expressions are
// whitespace-separated; punctuation may attach directly after a bracket.
Template parse_template(std::string_view line);
std::vector<TemplateExpr> parse_expr_sequence(std::string_view text);

// Canonical form: anchor "r", ids kept, all-punctuation Constants attached
// to the preceding expression without a space. parse(serialize(t)) == t.
std::string serialize_template(const Template& t);
std::string serialize_exprs(std::span<const TemplateExpr> exprs,
                            bool with_ids = true);

// Identity key with numeric ids stripped; isomorphic templates collide.
std::string structural_key(const Template& t);

// A rendered surface token: node_id 0 marks Constant text with no source
// node in the target tree.
struct RenderedToken {
  std::string text;
  int node_id = 0;
};

struct RenderedQa {
  std::vector<RenderedToken> question;
  std::vector<RenderedToken> answer;
  std::string question_text;
  std::string answer_text;
};

// Single-space join; all-punctuation tokens attach without a preceding
// space; empty tokens are skipped.
std::string join_tokens(std::span<const RenderedToken> tokens);

// nullopt when any non-Constant expression fails to resolve.
std::optional<std::vector<RenderedToken>> render_exprs(
    std::span<const TemplateExpr> exprs, const DepTree& tree, bool strict_ids);
std::optional<RenderedQa> render(const Template& t, const DepTree& tree,
                                 bool strict_ids = false);

}  // namespace qgen
