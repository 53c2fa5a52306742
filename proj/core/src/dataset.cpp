#include "qgen/dataset.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qgen {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DatasetError(std::string("cannot open ") + what + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Calls fn(line_no, parsed_object) for every nonempty line.
template <typename Fn>
void for_each_json_line(std::string_view text, const char* what, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetError(std::string(what) + " line " +
                         std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object())
      throw DatasetError(std::string(what) + " line " +
                         std::to_string(line_no) + ": expected an object");
    fn(line_no, obj);
  }
}

std::string get_string(const json& obj, const char* key, const char* what,
                       size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw DatasetError(std::string(what) + " line " + std::to_string(line_no) +
                       ": missing string field \"" + key + "\"");
  return it->get<std::string>();
}

std::vector<std::string> get_string_list(const json& obj, const char* key,
                                         const char* what, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array())
    throw DatasetError(std::string(what) + " line " + std::to_string(line_no) +
                       ": missing array field \"" + key + "\"");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string())
      throw DatasetError(std::string(what) + " line " +
                         std::to_string(line_no) + ": \"" + key +
                         "\" holds a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<DatasetItem> parse_dataset(std::string_view text) {
  std::vector<DatasetItem> items;
  for_each_json_line(text, "dataset", [&](size_t line_no, const json& obj) {
    DatasetItem item;
    item.id = get_string(obj, "id", "dataset", line_no);
    item.doc_id = get_string(obj, "doc_id", "dataset", line_no);
    item.answer = get_string(obj, "answer", "dataset", line_no);
    std::string context = get_string(obj, "context_conllu", "dataset", line_no);
    std::string question =
        get_string(obj, "question_conllu", "dataset", line_no);
    try {
      item.context = parse_conllu(context);
      std::vector<DepTree> q = parse_conllu(question);
      if (q.size() != 1)
        throw ConlluError("question must hold exactly one sentence");
      item.question = std::move(q[0]);
    } catch (const ConlluError& e) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         " (item " + item.id + "): " + e.what());
    }
    if (item.context.empty())
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         " (item " + item.id + "): empty context");
    items.push_back(std::move(item));
  });
  return items;
}

std::vector<DatasetItem> load_dataset(const std::string& path) {
  return parse_dataset(read_file(path, "dataset"));
}

std::vector<RefsEntry> parse_refs(std::string_view text) {
  std::vector<RefsEntry> out;
  for_each_json_line(text, "refs", [&](size_t line_no, const json& obj) {
    RefsEntry e;
    e.id = get_string(obj, "id", "refs", line_no);
    e.refs = get_string_list(obj, "refs", "refs", line_no);
    if (e.refs.empty())
      throw DatasetError("refs line " + std::to_string(line_no) +
                         ": empty reference list");
    out.push_back(std::move(e));
  });
  return out;
}

std::vector<RefsEntry> load_refs(const std::string& path) {
  return parse_refs(read_file(path, "refs"));
}

std::vector<HypRefs> parse_eval_pairs(std::string_view text) {
  std::vector<HypRefs> out;
  for_each_json_line(text, "eval", [&](size_t line_no, const json& obj) {
    HypRefs e;
    e.hyp = get_string(obj, "hyp", "eval", line_no);
    e.refs = get_string_list(obj, "refs", "eval", line_no);
    if (e.refs.empty())
      throw DatasetError("eval line " + std::to_string(line_no) +
                         ": empty reference list");
    out.push_back(std::move(e));
  });
  return out;
}

std::vector<HypRefs> load_eval_pairs(const std::string& path) {
  return parse_eval_pairs(read_file(path, "eval"));
}

std::string serialize_qa_rows(std::span<const QaRow> rows) {
  std::string out;
  for (const QaRow& r : rows) {
    ordered_json obj;
    obj["id"] = r.id;
    obj["rank"] = r.rank;
    obj["question"] = r.question;
    obj["answer"] = r.answer;
    obj["template_id"] = r.template_id;
    obj["r_ng"] = r.r_ng;
    obj["r_qw"] = r.r_qw;
    obj["r_qa"] = r.r_qa;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<QaRow> parse_qa_rows(std::string_view text) {
  std::vector<QaRow> out;
  for_each_json_line(text, "qa", [&](size_t line_no, const json& obj) {
    QaRow r;
    r.id = get_string(obj, "id", "qa", line_no);
    r.question = get_string(obj, "question", "qa", line_no);
    r.answer = get_string(obj, "answer", "qa", line_no);
    r.template_id = get_string(obj, "template_id", "qa", line_no);
    auto num = [&](const char* key) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_number())
        throw DatasetError("qa line " + std::to_string(line_no) +
                           ": missing number field \"" + std::string(key) +
                           "\"");
      return it->get<double>();
    };
    r.rank = static_cast<int>(num("rank"));
    r.r_ng = num("r_ng");
    r.r_qw = num("r_qw");
    r.r_qa = num("r_qa");
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<QaRow> load_qa_rows(const std::string& path) {
  return parse_qa_rows(read_file(path, "qa"));
}

std::vector<JudgementRow> parse_judgements(std::string_view text) {
  std::vector<JudgementRow> out;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "item_id,judge_id,criterion,score")
        throw DatasetError(
            "judgements: expected header "
            "'item_id,judge_id,criterion,score'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4)
      throw DatasetError("judgements line " + std::to_string(line_no) +
                         ": expected 4 fields");
    JudgementRow r;
    r.item_id = fields[0];
    r.judge_id = fields[1];
    r.criterion = fields[2];
    try {
      size_t pos = 0;
      r.score = std::stoi(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument(fields[3]);
    } catch (const std::exception&) {
      throw DatasetError("judgements line " + std::to_string(line_no) +
                         ": bad score '" + fields[3] + "'");
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) throw DatasetError("judgements: empty file");
  return out;
}

std::vector<JudgementRow> load_judgements(const std::string& path) {
  return parse_judgements(read_file(path, "judgements"));
}

}  // namespace qgen
