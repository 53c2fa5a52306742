#include "qgen/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qgen {

void NgramModel::add_sentence(std::span<const std::string> symbols) {
  std::vector<std::string> p;
  p.reserve(symbols.size() + 3);
  p.push_back(kStartSym);
  p.push_back(kStartSym);
  p.insert(p.end(), symbols.begin(), symbols.end());
  p.push_back(kEndSym);
  for (size_t i = 2; i < p.size(); ++i) {
    ++uni[p[i]];
    ++big[{p[i - 1], p[i]}];
    ++tri[{p[i - 2], p[i - 1], p[i]}];
  }
}

void NgramModel::finalize() {
  total = 0;
  ctx2.clear();
  ctx3.clear();
  for (const auto& [w, c] : uni) total += c;
  for (const auto& [key, c] : big) ctx2[key[0]] += c;
  for (const auto& [key, c] : tri) ctx3[{key[0], key[1]}] += c;
}

double NgramModel::unigram(const std::string& w) const {
  if (total == 0) return 0.0;
  auto it = uni.find(w);
  if (it == uni.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

double NgramModel::bigram(const std::string& prev,
                          const std::string& w) const {
  auto ctx = ctx2.find(prev);
  if (ctx == ctx2.end() || ctx->second == 0) return unigram(w);
  auto it = big.find({prev, w});
  if (it == big.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(ctx->second);
}

double NgramModel::trigram(const std::string& prev2, const std::string& prev1,
                           const std::string& w) const {
  auto ctx = ctx3.find({prev2, prev1});
  if (ctx == ctx3.end() || ctx->second == 0) return bigram(prev1, w);
  auto it = tri.find({prev2, prev1, w});
  if (it == tri.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(ctx->second);
}

double NgramModel::score(std::span<const std::string> symbols,
                         const std::array<double, 4>& lambdas) const {
  if (symbols.empty()) return lambdas[3];
  std::vector<std::string> p;
  p.reserve(symbols.size() + 2);
  p.push_back(kStartSym);
  p.push_back(kStartSym);
  p.insert(p.end(), symbols.begin(), symbols.end());
  double sum = 0.0;
  for (size_t i = 2; i < p.size(); ++i) {
    sum += lambdas[0] * trigram(p[i - 2], p[i - 1], p[i]) +
           lambdas[1] * bigram(p[i - 1], p[i]) + lambdas[2] * unigram(p[i]) +
           lambdas[3];
  }
  return sum / static_cast<double>(symbols.size());
}

void QwordModel::add(const std::string& qword, const std::string& posmorph) {
  ++counts[{qword, posmorph}];
}

void QwordModel::finalize() {
  totals.clear();
  for (const auto& [key, c] : counts) totals[key.first] += c;
}

double QwordModel::score(const std::string& qword,
                         const std::string& posmorph) const {
  auto tot = totals.find(qword);
  if (tot == totals.end() || tot->second == 0) return 0.0;
  auto it = counts.find({qword, posmorph});
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(tot->second);
}

void Model::finalize() {
  ngram.finalize();
  qword.finalize();
}

std::string serialize_model(const Model& m) {
  std::ostringstream out;
  out << "QGENMODEL 1\n";
  out << "LAMBDAS " << m.lambdas[0] << ' ' << m.lambdas[1] << ' '
      << m.lambdas[2] << ' ' << m.lambdas[3] << '\n';
  out << "ALPHA " << m.alpha << '\n';
  for (const auto& [w, c] : m.ngram.uni) out << "1GRAM " << w << ' ' << c << '\n';
  for (const auto& [key, c] : m.ngram.big)
    out << "2GRAM " << key[0] << ' ' << key[1] << ' ' << c << '\n';
  for (const auto& [key, c] : m.ngram.tri)
    out << "3GRAM " << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << c
        << '\n';
  for (const auto& [key, c] : m.qword.counts)
    out << "QW " << key.first << ' ' << key.second << ' ' << c << '\n';
  for (const auto& pm : m.answer_inventory) out << "ANS " << pm << '\n';
  return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_count(const std::string& s, size_t line_no) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ModelError("model line " + std::to_string(line_no) +
                     ": bad count '" + s + "'");
  }
}

double parse_real(const std::string& s, size_t line_no) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ModelError("model line " + std::to_string(line_no) +
                     ": bad number '" + s + "'");
  }
}

}  // namespace

Model parse_model(std::string_view text) {
  Model m;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line);
    if (!header_seen) {
      if (f.size() != 2 || f[0] != "QGENMODEL" || f[1] != "1")
        throw ModelError("unsupported model file: expected 'QGENMODEL 1'");
      header_seen = true;
      continue;
    }
    const std::string& tag = f[0];
    auto want = [&](size_t n) {
      if (f.size() != n)
        throw ModelError("model line " + std::to_string(line_no) +
                         ": malformed " + tag + " record");
    };
    if (tag == "LAMBDAS") {
      want(5);
      for (int i = 0; i < 4; ++i) m.lambdas[i] = parse_real(f[i + 1], line_no);
    } else if (tag == "ALPHA") {
      want(2);
      m.alpha = parse_real(f[1], line_no);
    } else if (tag == "1GRAM") {
      want(3);
      m.ngram.uni[f[1]] = parse_count(f[2], line_no);
    } else if (tag == "2GRAM") {
      want(4);
      m.ngram.big[{f[1], f[2]}] = parse_count(f[3], line_no);
    } else if (tag == "3GRAM") {
      want(5);
      m.ngram.tri[{f[1], f[2], f[3]}] = parse_count(f[4], line_no);
    } else if (tag == "QW") {
      want(4);
      m.qword.counts[{f[1], f[2]}] = parse_count(f[3], line_no);
    } else if (tag == "ANS") {
      want(2);
      m.answer_inventory.insert(f[1]);
    } else {
      throw ModelError("model line " + std::to_string(line_no) +
                       ": unknown record '" + tag + "'");
    }
  }
  if (!header_seen) throw ModelError("empty model file");
  m.finalize();
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write model file: " + path);
  out << serialize_model(m);
}

double combine(double r_ng, double r_qw, double alpha) {
  return alpha * r_ng + (1.0 - alpha) * r_qw;
}

std::vector<size_t> above_mean_indices(std::span<const double> values) {
  std::vector<size_t> out;
  if (values.empty()) return out;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] > mean) out.push_back(i);
  return out;
}

std::vector<ScoredQa> rank_and_filter(std::span<const Candidate> cands,
                                      const Model& m) {
  std::vector<ScoredQa> scored;
  for (const Candidate& c : cands) {
    if (c.answer_token_count == 1 &&
        !m.answer_inventory.count(c.answer_root_posmorph))
      continue;
    ScoredQa s;
    s.item_id = c.item_id;
    s.template_id = c.template_id;
    s.question = c.question;
    s.answer = c.answer;
    s.r_ng = m.ngram.score(c.question_symbols, m.lambdas);
    s.r_qw = m.qword.score(c.qword, c.answer_root_posmorph);
    s.r_qa = combine(s.r_ng, s.r_qw, m.alpha);
    scored.push_back(std::move(s));
  }
  if (scored.empty()) return scored;

  std::vector<double> values;
  values.reserve(scored.size());
  for (const ScoredQa& s : scored) values.push_back(s.r_qa);

  std::vector<ScoredQa> kept;
  for (size_t i : above_mean_indices(values)) kept.push_back(std::move(scored[i]));

  std::sort(kept.begin(), kept.end(), [](const ScoredQa& a, const ScoredQa& b) {
    if (a.r_qa != b.r_qa) return a.r_qa > b.r_qa;
    if (a.template_id != b.template_id) return a.template_id < b.template_id;
    if (a.question != b.question) return a.question < b.question;
    return a.item_id < b.item_id;
  });
  return kept;
}

}  // namespace qgen
