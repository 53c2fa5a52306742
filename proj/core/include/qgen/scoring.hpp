#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgen {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kStartSym = "<s>";
inline constexpr const char* kEndSym = "</s>";

// Backoff n-gram language model over pos-morph symbols. Counting pads each
// sentence with two start symbols and one end symbol; each real token and
// the end symbol is predicted exactly once per order, start symbols appear
// only as context. Context totals are derived from the counts, so a model
// round-trips through its file representation unchanged.
struct NgramModel {
  std::map<std::string, long long> uni;
  std::map<std::array<std::string, 2>, long long> big;
  std::map<std::array<std::string, 3>, long long> tri;

  // Derived by finalize(); not serialized.
  long long total = 0;
  std::map<std::string, long long> ctx2;
  std::map<std::array<std::string, 2>, long long> ctx3;

  void add_sentence(std::span<const std::string> symbols);
  void finalize();

  // Relative frequency with fallback one order down when the context is
  // unseen; a seen context with an unseen continuation scores 0.
  double unigram(const std::string& w) const;
  double bigram(const std::string& prev, const std::string& w) const;
  double trigram(const std::string& prev2, const std::string& prev1,
                 const std::string& w) const;

  // Mean over token positions of
  //   l1*p(w|w-2,w-1) + l2*p(w|w-1) + l3*p(w) + l4,
  // with two start symbols as leading context. In [l4, 1] when the lambdas
  // are convex weights.
  double score(std::span<const std::string> symbols,
               const std::array<double, 4>& lambdas) const;
};

// Frequencies of (question word, answer-root pos-morph) pairs.
struct QwordModel {
  std::map<std::pair<std::string, std::string>, long long> counts;
  std::map<std::string, long long> totals;  // derived per question word

  void add(const std::string& qword, const std::string& posmorph);
  void finalize();
  // c(qw, pm) / sum over pos-morphs seen with qw; 0 for an unseen qw.
  double score(const std::string& qword, const std::string& posmorph) const;
};

struct Model {
  NgramModel ngram;
  QwordModel qword;
  // Pos-morph expressions observed as single-word answers in training.
  std::set<std::string> answer_inventory;
  std::array<double, 4> lambdas{0.5, 0.3, 0.15, 0.05};
  double alpha = 0.8;

  void finalize();
};

std::string serialize_model(const Model& m);
Model parse_model(std::string_view text);  // finalized on return
Model load_model(const std::string& path);
void save_model(const Model& m, const std::string& path);

// A rendered QA pair awaiting scoring.
struct Candidate {
  std::string item_id;   // input sentence this was generated from
  std::string template_id;
  std::string question;  // joined surface text
  std::string answer;
  // One symbol per question token: pos-morph for node-backed tokens, the
  // literal text for constants.
  std::vector<std::string> question_symbols;
  std::string qword;
  std::string answer_root_posmorph;
  size_t answer_token_count = 0;
};

struct ScoredQa {
  std::string item_id;
  std::string template_id;
  std::string question;
  std::string answer;
  double r_ng = 0.0;
  double r_qw = 0.0;
  double r_qa = 0.0;
};

double combine(double r_ng, double r_qw, double alpha);

// Indices of values strictly above the arithmetic mean, in input order.
// Empty input and all-equal input both yield an empty result.
std::vector<size_t> above_mean_indices(std::span<const double> values);

// Drops single-word answers whose pos-morph was never an answer in
// training, scores the rest, keeps those strictly above the batch mean
// r_qa, and sorts descending by (r_qa, then ascending template id, question
// text, item id). All-equal scores leave nothing above the mean.
std::vector<ScoredQa> rank_and_filter(std::span<const Candidate> cands,
                                      const Model& m);

}  // namespace qgen
