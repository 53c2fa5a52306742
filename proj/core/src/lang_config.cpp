#include "qgen/lang_config.hpp"

#include <fstream>
#include <sstream>

#include "unicode.hpp"

namespace qgen {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true") {
    out = true;
    return true;
  }
  if (v == "false") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

LangConfig parse_lang_config(std::string_view text) {
  LangConfig cfg;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string val = trim(std::string_view(t).substr(eq + 1));
    bool ok = true;
    if (key == "lowercase") {
      ok = parse_bool(val, cfg.lowercase);
    } else if (key == "remove_punctuation") {
      ok = parse_bool(val, cfg.remove_punctuation);
    } else if (key == "remove_diacritics") {
      ok = parse_bool(val, cfg.remove_diacritics);
    } else if (key == "qword_position") {
      if (val == "start")
        cfg.qword_position = QwordPosition::Start;
      else if (val == "end")
        cfg.qword_position = QwordPosition::End;
      else
        ok = false;
    } else {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
    if (!ok)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": bad value '" + val + "' for " + key);
  }
  return cfg;
}

LangConfig load_lang_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_lang_config(ss.str());
}

std::string preprocess_text(std::string_view text, const LangConfig& cfg) {
  std::string out(text);
  if (cfg.lowercase) out = uni::to_lower(out);
  if (cfg.remove_punctuation) out = uni::remove_punctuation(out);
  if (cfg.remove_diacritics) out = uni::remove_diacritics(out);
  return out;
}

DepTree preprocess_tree(const DepTree& tree, const LangConfig& cfg) {
  // On trees punctuation removal drops PUNCT nodes; forms keep their glyphs.
  LangConfig text_cfg = cfg;
  text_cfg.remove_punctuation = false;
  std::vector<DepNode> nodes = tree.nodes();
  for (DepNode& n : nodes) {
    n.form = preprocess_text(n.form, text_cfg);
    n.lemma = preprocess_text(n.lemma, text_cfg);
  }

  if (cfg.remove_punctuation) {
    // Drop PUNCT nodes (never the root); children reattach upward.
    std::vector<DepNode> kept;
    kept.reserve(nodes.size());
    for (const DepNode& n : nodes) {
      if (n.upos == "PUNCT" && n.head != 0) continue;
      kept.push_back(n);
    }
    if (kept.size() != nodes.size()) {
      auto dropped = [&](int id) {
        for (const DepNode& n : kept)
          if (n.id == id) return false;
        return true;
      };
      auto head_of = [&](int id) -> int {
        for (const DepNode& n : nodes)
          if (n.id == id) return n.head;
        return 0;
      };
      for (DepNode& n : kept) {
        int h = n.head;
        while (h != 0 && dropped(h)) h = head_of(h);
        n.head = h;
      }
      nodes = std::move(kept);
    }
  }
  return DepTree(std::move(nodes), tree.sent_id());
}

}  // namespace qgen
