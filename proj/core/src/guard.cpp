#include "qgen/guard.hpp"

#include <algorithm>
#include <cctype>

#include "qgen/tree_ops.hpp"

namespace qgen {

namespace {

[[noreturn]] void fail(std::string_view what, std::string_view ctx) {
  throw GuardError(std::string(what) + " in '" + std::string(ctx) + "'");
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string lower_key(std::string_view f) {
  std::string k(f.substr(0, f.find('=')));
  for (char& c : k)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return k;
}

std::vector<std::string> parse_featset(std::string_view s,
                                       std::string_view ctx) {
  std::vector<std::string> feats;
  size_t start = 0;
  while (start <= s.size()) {
    size_t p = s.find('|', start);
    std::string_view part =
        s.substr(start, p == std::string_view::npos ? std::string_view::npos
                                                    : p - start);
    if (part.empty() || part.find('=') == std::string_view::npos)
      fail("bad feature", ctx);
    feats.emplace_back(part);
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  std::stable_sort(feats.begin(), feats.end(),
                   [](const std::string& a, const std::string& b) {
                     return lower_key(a) < lower_key(b);
                   });
  return feats;
}

// "n.rel.rel[.pos|.morph]"; property name returned separately.
std::pair<RelChain, std::string> parse_subject(std::string_view s,
                                               std::string_view ctx) {
  RelChain chain;
  std::string prop;
  size_t start = 0;
  bool first = true;
  std::vector<std::string_view> parts;
  while (start <= s.size()) {
    size_t p = s.find('.', start);
    parts.push_back(s.substr(
        start,
        p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  for (size_t pi = 0; pi < parts.size(); ++pi) {
    std::string_view part = parts[pi];
    if (first) {
      if (part.empty() || part.find('#') != std::string_view::npos)
        fail("bad root symbol", ctx);
      first = false;
      continue;
    }
    if (part.empty()) fail("empty chain component", ctx);
    if (part == "pos" || part == "morph") {
      if (pi + 1 != parts.size()) fail("property must end the subject", ctx);
      prop.assign(part);
      break;
    }
    // Ids are stripped: guards match by label only.
    size_t hash = part.find('#');
    chain.links.push_back(
        {std::string(part.substr(0, hash == std::string_view::npos
                                         ? part.size()
                                         : hash)),
         -1});
    if (chain.links.back().deprel.empty()) fail("empty relation label", ctx);
  }
  return {std::move(chain), std::move(prop)};
}

GuardClause parse_clause(std::string_view text) {
  auto toks = split_ws(text);
  if (toks.size() < 2) fail("incomplete clause", text);
  auto [chain, prop] = parse_subject(toks[0], text);
  std::string_view op = toks[1];
  GuardClause c;
  c.chain = std::move(chain);

  if (op == "exists" || op == "not_exists") {
    if (!prop.empty() || toks.size() != 2) fail("bad exists clause", text);
    c.kind = op == "exists" ? GuardClause::Kind::Exists
                            : GuardClause::Kind::NotExists;
    return c;
  }
  if (op == "is" || op == "is_not") {
    if (prop != "pos" || toks.size() != 3) fail("bad pos clause", text);
    c.kind = op == "is" ? GuardClause::Kind::PosIs
                        : GuardClause::Kind::PosIsNot;
    c.tag.assign(toks[2]);
    return c;
  }
  if (op == "has" || op == "has_not") {
    if (prop != "morph" || toks.size() != 3) fail("bad morph clause", text);
    c.kind = op == "has" ? GuardClause::Kind::MorphHas
                         : GuardClause::Kind::MorphHasNot;
    c.feats = parse_featset(toks[2], text);
    return c;
  }
  fail("unknown operator", text);
}

}  // namespace

Guard parse_guard(std::string_view line) {
  size_t arrow = line.rfind(" -> ");
  if (arrow == std::string_view::npos) fail("missing '->'", line);
  Guard g;
  std::string_view target = line.substr(arrow + 4);
  while (!target.empty() && (target.front() == ' ' || target.front() == '\t'))
    target.remove_prefix(1);
  while (!target.empty() && (target.back() == ' ' || target.back() == '\t' ||
                             target.back() == '\r'))
    target.remove_suffix(1);
  if (target.empty()) fail("empty target", line);
  g.target.assign(target);

  std::string_view clauses = line.substr(0, arrow);
  size_t start = 0;
  while (start <= clauses.size()) {
    size_t p = clauses.find(',', start);
    std::string_view part = clauses.substr(
        start,
        p == std::string_view::npos ? std::string_view::npos : p - start);
    while (!part.empty() && (part.front() == ' ' || part.front() == '\t'))
      part.remove_prefix(1);
    while (!part.empty() && (part.back() == ' ' || part.back() == '\t'))
      part.remove_suffix(1);
    if (part.empty()) fail("empty clause", line);
    g.clauses.push_back(parse_clause(part));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  if (g.clauses.empty()) fail("guard has no clauses", line);
  return g;
}

std::string serialize_clause(const GuardClause& c) {
  std::string subj = "n";
  std::string labels = chain_labels(c.chain, false);
  if (!labels.empty()) subj += "." + labels;
  switch (c.kind) {
    case GuardClause::Kind::Exists:
      return subj + " exists";
    case GuardClause::Kind::NotExists:
      return subj + " not_exists";
    case GuardClause::Kind::PosIs:
      return subj + ".pos is " + c.tag;
    case GuardClause::Kind::PosIsNot:
      return subj + ".pos is_not " + c.tag;
    case GuardClause::Kind::MorphHas:
    case GuardClause::Kind::MorphHasNot: {
      std::string fs;
      for (size_t i = 0; i < c.feats.size(); ++i) {
        if (i) fs += "|";
        fs += c.feats[i];
      }
      return subj + ".morph " +
             (c.kind == GuardClause::Kind::MorphHas ? "has " : "has_not ") +
             fs;
    }
  }
  return {};
}

std::string serialize_guard(const Guard& g) {
  std::string out;
  for (size_t i = 0; i < g.clauses.size(); ++i) {
    if (i) out += ", ";
    out += serialize_clause(g.clauses[i]);
  }
  out += " -> " + g.target;
  return out;
}

bool eval_clause(const GuardClause& c, const DepTree& tree) {
  const DepNode* n = resolve_chain(tree, c.chain, /*strict_ids=*/false);
  switch (c.kind) {
    case GuardClause::Kind::Exists:
      return n != nullptr;
    case GuardClause::Kind::NotExists:
      return n == nullptr;
    case GuardClause::Kind::PosIs:
      return n && n->upos == c.tag;
    case GuardClause::Kind::PosIsNot:
      return n && n->upos != c.tag;
    case GuardClause::Kind::MorphHas:
      return n && std::all_of(c.feats.begin(), c.feats.end(),
                              [&](const std::string& f) {
                                return std::find(n->feats.begin(),
                                                 n->feats.end(),
                                                 f) != n->feats.end();
                              });
    case GuardClause::Kind::MorphHasNot:
      return n && std::none_of(c.feats.begin(), c.feats.end(),
                               [&](const std::string& f) {
                                 return std::find(n->feats.begin(),
                                                  n->feats.end(),
                                                  f) != n->feats.end();
                               });
  }
  return false;
}

bool eval_guard(const Guard& g, const DepTree& tree) {
  return std::all_of(g.clauses.begin(), g.clauses.end(),
                     [&](const GuardClause& c) { return eval_clause(c, tree); });
}

}  // namespace qgen
