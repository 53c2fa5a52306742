#include "qgen/conllu.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qgen {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
  return out;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Sorts by key, case-insensitively, keeping the first occurrence of a key.
std::vector<std::string> normalize_feats(std::string_view field) {
  std::vector<std::string> feats;
  if (field.empty() || field == "_") return feats;
  for (std::string_view part : split(field, '|')) {
    if (part.empty()) continue;
    size_t eq = part.find('=');
    std::string key(eq == std::string_view::npos ? part : part.substr(0, eq));
    bool dup = false;
    for (const std::string& f : feats) {
      if (lower_ascii(f.substr(0, f.find('='))) == lower_ascii(key)) {
        dup = true;
        break;
      }
    }
    if (!dup) feats.emplace_back(part);
  }
  std::stable_sort(feats.begin(), feats.end(),
                   [](const std::string& a, const std::string& b) {
                     return lower_ascii(a.substr(0, a.find('='))) <
                            lower_ascii(b.substr(0, b.find('=')));
                   });
  return feats;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace

DepTree::DepTree(std::vector<DepNode> nodes, std::string sent_id)
    : nodes_(std::move(nodes)), sent_id_(std::move(sent_id)) {
  if (nodes_.empty()) throw ConlluError("tree has no nodes");

  int max_id = 0;
  for (const DepNode& n : nodes_) {
    if (n.id < 1) throw ConlluError("node id must be positive");
    max_id = std::max(max_id, n.id);
  }
  index_.assign(static_cast<size_t>(max_id) + 1, 0);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (index_[static_cast<size_t>(nodes_[i].id)] != 0)
      throw ConlluError("duplicate node id " + std::to_string(nodes_[i].id));
    index_[static_cast<size_t>(nodes_[i].id)] = static_cast<int>(i) + 1;
  }

  children_.assign(nodes_.size(), {});
  root_id_ = 0;
  for (const DepNode& n : nodes_) {
    if (n.head == 0) {
      if (root_id_ != 0) throw ConlluError("multiple roots");
      root_id_ = n.id;
    } else {
      if (!has_node(n.head))
        throw ConlluError("head " + std::to_string(n.head) +
                          " of node " + std::to_string(n.id) + " not found");
      children_[pos(n.head)].push_back(n.id);
    }
  }
  if (root_id_ == 0) throw ConlluError("no root");
  for (auto& c : children_) std::sort(c.begin(), c.end());

  // Depths via a root-out traversal; unreached nodes sit on a cycle.
  depth_.assign(nodes_.size(), -1);
  std::vector<int> stack{root_id_};
  depth_[pos(root_id_)] = 0;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    for (int c : children_[pos(id)]) {
      depth_[pos(c)] = depth_[pos(id)] + 1;
      stack.push_back(c);
    }
  }
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (depth_[i] < 0)
      throw ConlluError("cycle through node " + std::to_string(nodes_[i].id));
}

bool DepTree::has_node(int id) const {
  return id >= 1 && static_cast<size_t>(id) < index_.size() &&
         index_[static_cast<size_t>(id)] != 0;
}

size_t DepTree::pos(int id) const {
  if (!has_node(id)) throw ConlluError("unknown node id " + std::to_string(id));
  return static_cast<size_t>(index_[static_cast<size_t>(id)] - 1);
}

const DepNode& DepTree::node(int id) const { return nodes_[pos(id)]; }

const std::vector<int>& DepTree::children(int id) const {
  return children_[pos(id)];
}

int DepTree::depth(int id) const { return depth_[pos(id)]; }

std::vector<int> DepTree::subtree_ids(int id) const {
  std::vector<int> out;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (int c : children(cur)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> DepTree::forms() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (const DepNode& n : nodes_) out.push_back(n.form);
  return out;
}

std::vector<DepTree> parse_conllu(std::string_view text) {
  std::vector<DepTree> trees;
  std::vector<DepNode> nodes;
  std::string sent_id;
  size_t sentence_index = 0;

  auto flush = [&]() {
    if (nodes.empty()) {
      sent_id.clear();
      return;
    }
    try {
      trees.emplace_back(std::move(nodes), std::move(sent_id));
    } catch (const ConlluError& e) {
      throw ConlluError("sentence " + std::to_string(sentence_index) + ": " +
                        e.what());
    }
    nodes.clear();
    sent_id.clear();
    ++sentence_index;
  };

  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t nl = text.find('\n', line_start);
    std::string_view line = text.substr(
        line_start, nl == std::string_view::npos ? std::string_view::npos
                                                 : nl - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      flush();
    } else if (line.front() == '#') {
      std::string_view c = line.substr(1);
      while (!c.empty() && c.front() == ' ') c.remove_prefix(1);
      if (c.rfind("sent_id", 0) == 0) {
        size_t eq = c.find('=');
        if (eq != std::string_view::npos) {
          std::string_view v = c.substr(eq + 1);
          while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
          while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
          sent_id.assign(v);
        }
      }
    } else {
      auto cols = split(line, '\t');
      if (cols.size() != 10)
        throw ConlluError("sentence " + std::to_string(sentence_index) +
                          ": expected 10 columns, got " +
                          std::to_string(cols.size()));
      std::string_view idf = cols[0];
      // Multiword ranges and empty nodes carry no tree structure.
      if (idf.find('-') != std::string_view::npos ||
          idf.find('.') != std::string_view::npos) {
        if (nl == std::string_view::npos) break;
        line_start = nl + 1;
        continue;
      }
      DepNode n;
      if (!parse_int(idf, n.id))
        throw ConlluError("sentence " + std::to_string(sentence_index) +
                          ": bad id '" + std::string(idf) + "'");
      n.form.assign(cols[1]);
      n.lemma = cols[2] == "_" ? std::string() : std::string(cols[2]);
      n.upos.assign(cols[3]);
      n.feats = normalize_feats(cols[5]);
      if (!parse_int(cols[6], n.head))
        throw ConlluError("sentence " + std::to_string(sentence_index) +
                          ": bad head '" + std::string(cols[6]) + "'");
      n.deprel.assign(cols[7]);
      nodes.push_back(std::move(n));
    }

    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  flush();
  return trees;
}

std::string to_conllu(const DepTree& tree) {
  std::ostringstream os;
  if (!tree.sent_id().empty()) os << "# sent_id = " << tree.sent_id() << "\n";
  for (const DepNode& n : tree.nodes()) {
    os << n.id << '\t' << n.form << '\t' << (n.lemma.empty() ? "_" : n.lemma)
       << '\t' << n.upos << '\t' << "_" << '\t';
    if (n.feats.empty()) {
      os << "_";
    } else {
      for (size_t i = 0; i < n.feats.size(); ++i) {
        if (i) os << '|';
        os << n.feats[i];
      }
    }
    os << '\t' << n.head << '\t' << n.deprel << '\t' << "_" << '\t' << "_"
       << "\n";
  }
  return os.str();
}

std::string to_conllu(const std::vector<DepTree>& trees) {
  std::string out;
  for (const DepTree& t : trees) {
    out += to_conllu(t);
    out += "\n";
  }
  return out;
}

}  // namespace qgen
