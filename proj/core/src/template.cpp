#include "qgen/template.hpp"

#include <algorithm>

#include "unicode.hpp"

namespace qgen {

TemplateExpr TemplateExpr::constant(std::string t) {
  TemplateExpr e;
  e.kind = Kind::Constant;
  e.text = std::move(t);
  return e;
}

TemplateExpr TemplateExpr::node(RelChain c, bool lemma, int end_id) {
  TemplateExpr e;
  e.kind = Kind::Node;
  e.chain = std::move(c);
  e.lemma = lemma;
  e.end_node_id = end_id;
  return e;
}

TemplateExpr TemplateExpr::subtree(RelChain c, std::vector<Negative> negs,
                                   int end_id) {
  TemplateExpr e;
  e.kind = Kind::Subtree;
  e.chain = std::move(c);
  e.negatives = std::move(negs);
  e.end_node_id = end_id;
  return e;
}

namespace {

[[noreturn]] void fail(std::string_view what, std::string_view ctx) {
  throw TemplateError(std::string(what) + " in '" + std::string(ctx) + "'");
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

RelLink parse_link(std::string_view part, std::string_view ctx) {
  size_t hash = part.find('#');
  RelLink link;
  if (hash == std::string_view::npos) {
    link.deprel.assign(part);
    link.id = -1;
  } else {
    link.deprel.assign(part.substr(0, hash));
    std::string_view idpart = part.substr(hash + 1);
    if (idpart.empty()) fail("missing id after '#'", ctx);
    int id = 0;
    for (char c : idpart) {
      if (c < '0' || c > '9') fail("bad id", ctx);
      id = id * 10 + (c - '0');
    }
    link.id = id;
  }
  if (link.deprel.empty()) fail("empty relation label", ctx);
  for (char c : link.deprel)
    if (c == '*' || c == '[' || c == ']' || c == '<' || c == '>' || is_space(c))
      fail("bad relation label", ctx);
  return link;
}

std::vector<std::string_view> split_on(std::string_view s,
                                       std::string_view sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + sep.size();
  }
}

// "anchor.rel#id.rel#id[.lemma]"; returns the chain, sets lemma_out if the
// trailing component is the lemma marker (only when allow_lemma).
RelChain parse_anchored(std::string_view content, bool allow_lemma,
                        bool* lemma_out, std::string_view ctx) {
  auto parts = split_on(content, ".");
  if (parts.empty() || parts[0].empty()) fail("missing root symbol", ctx);
  if (parts[0].find('#') != std::string_view::npos)
    fail("root symbol cannot carry an id", ctx);
  RelChain chain;
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "lemma") {
      if (!allow_lemma) fail("lemma marker not allowed here", ctx);
      if (i + 1 != parts.size()) fail("lemma must end the chain", ctx);
      if (lemma_out) *lemma_out = true;
      break;
    }
    chain.links.push_back(parse_link(parts[i], ctx));
  }
  return chain;
}

TemplateExpr parse_node_expr(std::string_view content) {
  bool lemma = false;
  RelChain chain = parse_anchored(content, true, &lemma, content);
  int end_id = chain.links.empty() ? 0 : chain.links.back().id;
  return TemplateExpr::node(std::move(chain), lemma, std::max(end_id, 0));
}

TemplateExpr parse_subtree_expr(std::string_view content) {
  auto parts = split_on(content, " - ");
  RelChain chain = parse_anchored(parts[0], false, nullptr, content);
  std::vector<Negative> negs;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::string_view p = parts[i];
    if (p.empty()) fail("empty negative", content);
    Negative neg;
    if (p.back() == '*') {
      neg.star = true;
      p.remove_suffix(1);
    }
    if (p.empty()) fail("empty negative", content);
    for (std::string_view link : split_on(p, "."))
      neg.chain.links.push_back(parse_link(link, content));
    negs.push_back(std::move(neg));
  }
  int end_id = chain.links.empty() ? 0 : chain.links.back().id;
  return TemplateExpr::subtree(std::move(chain), std::move(negs),
                               std::max(end_id, 0));
}

void check_plain(std::string_view tok, std::string_view ctx) {
  for (char c : tok)
    if (c == '[' || c == ']' || c == '<' || c == '>')
      fail("unexpected bracket", ctx);
}

}  // namespace

std::vector<TemplateExpr> parse_expr_sequence(std::string_view text) {
  std::vector<TemplateExpr> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    char c = text[i];
    if (c == '[' || c == '<') {
      char close = c == '[' ? ']' : '>';
      size_t end = text.find(close, i + 1);
      if (end == std::string_view::npos) fail("unbalanced bracket", text);
      std::string_view content = text.substr(i + 1, end - i - 1);
      out.push_back(c == '[' ? parse_node_expr(content)
                             : parse_subtree_expr(content));
      i = end + 1;
      // Directly attached trailing text ("<r.obl#5>?") is its own Constant.
      size_t tail = i;
      while (tail < n && !is_space(text[tail])) ++tail;
      if (tail > i) {
        std::string_view attached = text.substr(i, tail - i);
        check_plain(attached, text);
        out.push_back(TemplateExpr::constant(std::string(attached)));
      }
      i = tail;
    } else {
      size_t tail = i;
      while (tail < n && !is_space(text[tail])) ++tail;
      std::string_view tok = text.substr(i, tail - i);
      check_plain(tok, text);
      out.push_back(TemplateExpr::constant(std::string(tok)));
      i = tail;
    }
  }
  return out;
}

Template parse_template(std::string_view line) {
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos)
    fail("expected 'ID<TAB>template'", line);
  Template t;
  t.id.assign(line.substr(0, tab));
  if (t.id.empty()) fail("empty template id", line);
  std::string_view body = line.substr(tab + 1);

  // The separator is a bare "=>" outside brackets.
  size_t sep = std::string_view::npos;
  int depth = 0;
  for (size_t i = 0; i + 1 < body.size(); ++i) {
    char c = body[i];
    if (c == '[' || c == '<') ++depth;
    if (c == ']' || c == '>') --depth;
    if (depth == 0 && c == '=' && body[i + 1] == '>' &&
        (i == 0 || is_space(body[i - 1])) &&
        (i + 2 >= body.size() || is_space(body[i + 2]))) {
      sep = i;
      break;
    }
  }
  if (sep == std::string_view::npos) fail("missing '=>'", line);
  t.question = parse_expr_sequence(body.substr(0, sep));
  t.answer = parse_expr_sequence(body.substr(sep + 2));
  if (t.question.empty() || t.answer.empty())
    fail("empty template side", line);
  return t;
}

namespace {

std::string serialize_expr(const TemplateExpr& e, bool with_ids) {
  switch (e.kind) {
    case TemplateExpr::Kind::Constant:
      return e.text;
    case TemplateExpr::Kind::Node: {
      std::string s = "[r";
      std::string labels = chain_labels(e.chain, with_ids);
      if (!labels.empty()) s += "." + labels;
      if (e.lemma) s += ".lemma";
      s += "]";
      return s;
    }
    case TemplateExpr::Kind::Subtree: {
      std::string s = "<r";
      std::string labels = chain_labels(e.chain, with_ids);
      if (!labels.empty()) s += "." + labels;
      for (const Negative& neg : e.negatives) {
        s += " - " + chain_labels(neg.chain, with_ids);
        if (neg.star) s += "*";
      }
      s += ">";
      return s;
    }
  }
  return {};
}

}  // namespace

std::string serialize_exprs(std::span<const TemplateExpr> exprs,
                            bool with_ids) {
  std::string out;
  for (const TemplateExpr& e : exprs) {
    std::string s = serialize_expr(e, with_ids);
    if (out.empty()) {
      out = std::move(s);
    } else if (e.kind == TemplateExpr::Kind::Constant &&
               uni::all_punctuation(s)) {
      out += s;
    } else {
      out += " " + s;
    }
  }
  return out;
}

std::string serialize_template(const Template& t) {
  return t.id + "\t" + serialize_exprs(t.question) + " => " +
         serialize_exprs(t.answer);
}

std::string structural_key(const Template& t) {
  return serialize_exprs(t.question, false) + " => " +
         serialize_exprs(t.answer, false);
}

std::string join_tokens(std::span<const RenderedToken> tokens) {
  std::string out;
  for (const RenderedToken& tok : tokens) {
    if (tok.text.empty()) continue;
    if (!out.empty() && !uni::all_punctuation(tok.text)) out.push_back(' ');
    out += tok.text;
  }
  return out;
}

std::optional<std::vector<RenderedToken>> render_exprs(
    std::span<const TemplateExpr> exprs, const DepTree& tree,
    bool strict_ids) {
  std::vector<RenderedToken> out;
  for (const TemplateExpr& e : exprs) {
    switch (e.kind) {
      case TemplateExpr::Kind::Constant:
        out.push_back({e.text, 0});
        break;
      case TemplateExpr::Kind::Node: {
        const DepNode* n = resolve_chain(tree, e.chain, strict_ids);
        if (!n) return std::nullopt;
        // Lemma falls back to the form when the treebank omits it.
        std::string text = e.lemma && !n->lemma.empty() ? n->lemma : n->form;
        out.push_back({std::move(text), n->id});
        break;
      }
      case TemplateExpr::Kind::Subtree: {
        const DepNode* n = resolve_chain(tree, e.chain, strict_ids);
        if (!n) return std::nullopt;
        for (int id :
             subtree_token_ids(tree, n->id, e.negatives, strict_ids))
          out.push_back({tree.node(id).form, id});
        break;
      }
    }
  }
  return out;
}

std::optional<RenderedQa> render(const Template& t, const DepTree& tree,
                                 bool strict_ids) {
  auto q = render_exprs(t.question, tree, strict_ids);
  if (!q) return std::nullopt;
  auto a = render_exprs(t.answer, tree, strict_ids);
  if (!a) return std::nullopt;
  RenderedQa r;
  r.question = std::move(*q);
  r.answer = std::move(*a);
  r.question_text = join_tokens(r.question);
  r.answer_text = join_tokens(r.answer);
  return r;
}

}  // namespace qgen
