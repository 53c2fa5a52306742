#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/induction.hpp"
#include "qgen/scoring.hpp"

namespace qgen {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON Lines, one object per line:
//   {"id", "doc_id", "context_conllu", "question_conllu", "answer"}
// The context may hold several sentences; the question exactly one.
std::vector<DatasetItem> parse_dataset(std::string_view text);
std::vector<DatasetItem> load_dataset(const std::string& path);

// Reference sets keyed by item id: {"id", "refs": [str, ...]}.
struct RefsEntry {
  std::string id;
  std::vector<std::string> refs;
};
std::vector<RefsEntry> parse_refs(std::string_view text);
std::vector<RefsEntry> load_refs(const std::string& path);

// Self-contained evaluation items: {"hyp": str, "refs": [str, ...]}.
struct HypRefs {
  std::string hyp;
  std::vector<std::string> refs;
};
std::vector<HypRefs> parse_eval_pairs(std::string_view text);
std::vector<HypRefs> load_eval_pairs(const std::string& path);

// Generated QA output, one ranked pair per line.
struct QaRow {
  std::string id;
  int rank = 0;
  std::string question;
  std::string answer;
  std::string template_id;
  double r_ng = 0.0;
  double r_qw = 0.0;
  double r_qa = 0.0;
};
std::string serialize_qa_rows(std::span<const QaRow> rows);
std::vector<QaRow> parse_qa_rows(std::string_view text);
std::vector<QaRow> load_qa_rows(const std::string& path);

// Human judgement table, CSV with the exact header
// "item_id,judge_id,criterion,score". No quoting; fields must be
// comma-free.
struct JudgementRow {
  std::string item_id;
  std::string judge_id;
  std::string criterion;
  int score = 0;
};
std::vector<JudgementRow> parse_judgements(std::string_view text);
std::vector<JudgementRow> load_judgements(const std::string& path);

}  // namespace qgen
