#include "qgen/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

#include "parallel.hpp"
#include "qgen/conllu.hpp"
#include "qgen/dataset.hpp"
#include "qgen/guard.hpp"
#include "qgen/guard_induction.hpp"
#include "qgen/induction.hpp"
#include "qgen/lang_config.hpp"
#include "qgen/metrics.hpp"
#include "qgen/scoring.hpp"
#include "qgen/template.hpp"
#include "qgen/tree_ops.hpp"

namespace qgen {

namespace {

constexpr const char* kTemplatesHeader = "# qgen templates v1";
constexpr const char* kGuardsHeader = "# qgen guards v1";

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LangConfig config_for(const CommonOptions& opts) {
  if (opts.config_path.empty()) return LangConfig{};
  return load_lang_config(opts.config_path);
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw PipelineError(std::string("cannot open ") + what + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content,
                const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw PipelineError(std::string("cannot write ") + what + ": " + path);
  out << content;
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::vector<Template> load_templates(const std::string& path) {
  std::istringstream in(read_file(path, "templates file"));
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  std::vector<Template> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kTemplatesHeader)
        throw PipelineError("unsupported templates file: expected '" +
                            std::string(kTemplatesHeader) + "'");
      header_seen = true;
      continue;
    }
    try {
      out.push_back(parse_template(line));
    } catch (const TemplateError& e) {
      throw PipelineError("templates line " + std::to_string(line_no) + ": " +
                          e.what());
    }
  }
  if (!header_seen) throw PipelineError("templates file is empty: " + path);
  return out;
}

std::vector<Guard> load_guards(const std::string& path) {
  std::istringstream in(read_file(path, "guards file"));
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  std::vector<Guard> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kGuardsHeader)
        throw PipelineError("unsupported guards file: expected '" +
                            std::string(kGuardsHeader) + "'");
      header_seen = true;
      continue;
    }
    try {
      out.push_back(parse_guard(line));
    } catch (const GuardError& e) {
      throw PipelineError("guards line " + std::to_string(line_no) + ": " +
                          e.what());
    }
  }
  if (!header_seen) throw PipelineError("guards file is empty: " + path);
  return out;
}

Model prepare_model(const std::string& path, const CommonOptions& opts) {
  Model m = load_model(path);
  if (opts.alpha) m.alpha = *opts.alpha;
  if (opts.lambdas) m.lambdas = *opts.lambdas;
  return m;
}

std::vector<std::string> tokenize(const std::string& text,
                                  const LangConfig& cfg) {
  std::string pre = preprocess_text(text, cfg);
  std::vector<std::string> out;
  std::istringstream in(pre);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

int run_induce(const std::string& dataset_path, const CommonOptions& opts,
               const std::string& templates_out, const std::string& guards_out,
               const std::string& stats_out, std::ostream& err) {
  try {
    LangConfig cfg = config_for(opts);
    std::vector<DatasetItem> dataset = load_dataset(dataset_path);
    InductionResult result = induce(dataset, cfg, opts.threads);

    std::string tpl_text = std::string(kTemplatesHeader) + "\n";
    for (const Template& t : result.templates)
      tpl_text += serialize_template(t) + "\n";
    write_file(templates_out, tpl_text, "templates file");

    std::string grd_text = std::string(kGuardsHeader) + "\n";
    for (size_t i = 0; i < result.templates.size(); ++i)
      for (const Guard& g :
           induce_guards(result.templates[i], result.supports[i]))
        grd_text += serialize_guard(g) + "\n";
    write_file(guards_out, grd_text, "guards file");

    const InductionStats& st = result.stats;
    auto pct = [&](size_t k) {
      return st.total == 0 ? 0.0
                           : 100.0 * static_cast<double>(k) /
                                 static_cast<double>(st.total);
    };
    std::string stats_text;
    stats_text += "satisfactory_pct\t" + fixed(pct(st.satisfactory), 2) + "\n";
    stats_text += "answer_subword_pct\t" + fixed(pct(st.subword), 2) + "\n";
    stats_text += "satisfactory_not_subword_pct\t" +
                  fixed(pct(st.satisfactory_not_subword), 2) + "\n";
    stats_text +=
        "induced_templates\t" + std::to_string(st.templates) + "\n";
    write_file(stats_out, stats_text, "stats file");

    if (result.templates.empty()) {
      err << "warning: no templates induced\n";
      return kExitEmpty;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_train(const std::string& corpus_path, const std::string& dataset_path,
              const CommonOptions& opts, const std::string& model_out,
              std::ostream& err) {
  try {
    LangConfig cfg = config_for(opts);
    std::vector<DepTree> corpus = parse_conllu(read_file(corpus_path, "corpus"));
    if (corpus.empty()) throw PipelineError("corpus holds no sentences");

    Model m;
    if (opts.lambdas) m.lambdas = *opts.lambdas;
    if (opts.alpha) m.alpha = *opts.alpha;

    for (const DepTree& tree : corpus) {
      DepTree pre = preprocess_tree(tree, cfg);
      std::vector<std::string> symbols;
      symbols.reserve(pre.nodes().size());
      for (const DepNode& n : pre.nodes()) symbols.push_back(pos_morph(n));
      m.ngram.add_sentence(symbols);
    }

    std::vector<DatasetItem> dataset = load_dataset(dataset_path);
    size_t usable = 0;
    for (const DatasetItem& item : dataset) {
      std::vector<DepTree> context;
      context.reserve(item.context.size());
      for (const DepTree& t : item.context)
        context.push_back(preprocess_tree(t, cfg));
      DepTree question = preprocess_tree(item.question, cfg);
      std::string answer = preprocess_text(item.answer, cfg);

      TripleSearch search = find_triple(context, question, answer);
      if (!search.triple) continue;
      ++usable;
      const Triple& triple = *search.triple;

      std::vector<std::string> qforms = question.forms();
      std::string qword = cfg.qword_position == QwordPosition::Start
                              ? qforms.front()
                              : qforms.back();

      // The answer root: span node nearest the sentence root.
      const DepTree& s = triple.sentence;
      size_t best = triple.span_begin;
      for (size_t i = triple.span_begin + 1; i <= triple.span_end; ++i) {
        const DepNode& cand = s.nodes()[i];
        const DepNode& cur = s.nodes()[best];
        int dc = s.depth(cand.id), db = s.depth(cur.id);
        if (dc < db || (dc == db && cand.id < cur.id)) best = i;
      }
      std::string root_pm = pos_morph(s.nodes()[best]);
      m.qword.add(qword, root_pm);
      if (triple.span_begin == triple.span_end)
        m.answer_inventory.insert(root_pm);
    }
    if (usable == 0)
      err << "warning: no usable items in dataset; question-word statistics "
             "are empty\n";

    m.finalize();
    save_model(m, model_out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_generate(const std::string& input_path,
                 const std::string& templates_path,
                 const std::string& guards_path, const std::string& model_path,
                 const CommonOptions& opts, const std::string& qa_out,
                 std::ostream& err) {
  try {
    LangConfig cfg = config_for(opts);
    std::vector<Template> templates = load_templates(templates_path);
    std::vector<Guard> guards = load_guards(guards_path);
    Model model = prepare_model(model_path, opts);

    std::map<std::string, size_t> by_id;
    for (size_t i = 0; i < templates.size(); ++i)
      by_id[templates[i].id] = i;
    for (const Guard& g : guards)
      if (!by_id.count(g.target))
        throw PipelineError("guard targets unknown template '" + g.target +
                            "'");

    std::vector<DepTree> input = parse_conllu(read_file(input_path, "input"));
    std::vector<std::string> item_ids(input.size());
    for (size_t i = 0; i < input.size(); ++i)
      item_ids[i] = input[i].sent_id().empty() ? std::to_string(i + 1)
                                               : input[i].sent_id();

    std::vector<std::vector<Candidate>> per_item(input.size());
    detail::parallel_for(input.size(), opts.threads, [&](size_t i) {
      DepTree pre = preprocess_tree(input[i], cfg);

      std::vector<std::string> targets;
      for (const Guard& g : guards) {
        if (!eval_guard(g, pre)) continue;
        if (std::find(targets.begin(), targets.end(), g.target) ==
            targets.end())
          targets.push_back(g.target);
      }

      for (const std::string& target : targets) {
        const Template& t = templates[by_id.at(target)];
        std::optional<RenderedQa> rendered = render(t, pre);
        if (!rendered) continue;

        Candidate c;
        c.item_id = item_ids[i];
        c.template_id = t.id;
        c.question = rendered->question_text;
        c.answer = rendered->answer_text;
        for (const RenderedToken& tok : rendered->question)
          c.question_symbols.push_back(
              tok.node_id > 0 ? pos_morph(pre.node(tok.node_id)) : tok.text);

        if (cfg.qword_position == QwordPosition::Start) {
          for (const RenderedToken& tok : rendered->question)
            if (tok.node_id == 0) {
              c.qword = tok.text;
              break;
            }
        } else {
          for (auto it = rendered->question.rbegin();
               it != rendered->question.rend(); ++it)
            if (it->node_id == 0) {
              c.qword = it->text;
              break;
            }
        }

        int root_id = 0;
        for (const RenderedToken& tok : rendered->answer) {
          if (tok.node_id <= 0) continue;
          if (root_id == 0 ||
              pre.depth(tok.node_id) < pre.depth(root_id) ||
              (pre.depth(tok.node_id) == pre.depth(root_id) &&
               tok.node_id < root_id))
            root_id = tok.node_id;
        }
        if (root_id > 0) c.answer_root_posmorph = pos_morph(pre.node(root_id));
        c.answer_token_count = rendered->answer.size();
        per_item[i].push_back(std::move(c));
      }
    });

    std::vector<Candidate> cands;
    for (auto& batch : per_item)
      for (Candidate& c : batch) cands.push_back(std::move(c));

    std::vector<ScoredQa> kept = rank_and_filter(cands, model);

    std::vector<QaRow> rows;
    for (size_t i = 0; i < input.size(); ++i) {
      int rank = 0;
      for (const ScoredQa& s : kept) {
        if (s.item_id != item_ids[i]) continue;
        if (rank >= opts.top_k) break;
        QaRow r;
        r.id = s.item_id;
        r.rank = ++rank;
        r.question = s.question;
        r.answer = s.answer;
        r.template_id = s.template_id;
        r.r_ng = s.r_ng;
        r.r_qw = s.r_qw;
        r.r_qa = s.r_qa;
        rows.push_back(std::move(r));
      }
    }

    write_file(qa_out, serialize_qa_rows(rows), "qa file");
    if (rows.empty()) {
      err << "warning: no QA pairs generated\n";
      return kExitEmpty;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_eval(const std::string& hyp_path, const std::string& refs_path,
             const CommonOptions& opts, const std::string& metrics_out,
             std::ostream& err) {
  try {
    LangConfig cfg = config_for(opts);
    std::vector<EvalPair> pairs;

    if (refs_path.empty()) {
      for (const HypRefs& hr : load_eval_pairs(hyp_path)) {
        EvalPair p;
        p.hyp = tokenize(hr.hyp, cfg);
        for (const std::string& r : hr.refs)
          p.refs.push_back(tokenize(r, cfg));
        pairs.push_back(std::move(p));
      }
    } else {
      std::vector<QaRow> qa = load_qa_rows(hyp_path);
      std::map<std::string, std::vector<std::string>> refs;
      for (const RefsEntry& e : load_refs(refs_path)) {
        if (!refs.emplace(e.id, e.refs).second)
          throw PipelineError("duplicate reference id '" + e.id + "'");
      }
      // Top-ranked question per item; items never generated for are skipped.
      std::vector<std::string> order;
      std::map<std::string, const QaRow*> top;
      for (const QaRow& r : qa) {
        auto it = top.find(r.id);
        if (it == top.end()) {
          top[r.id] = &r;
          order.push_back(r.id);
        } else if (r.rank < it->second->rank) {
          it->second = &r;
        }
      }
      for (const std::string& id : order) {
        auto it = refs.find(id);
        if (it == refs.end())
          throw PipelineError("no references for item '" + id + "'");
        EvalPair p;
        p.hyp = tokenize(top[id]->question, cfg);
        for (const std::string& r : it->second)
          p.refs.push_back(tokenize(r, cfg));
        pairs.push_back(std::move(p));
      }
    }
    if (pairs.empty()) throw PipelineError("no items to evaluate");

    std::string out;
    for (int n = 1; n <= 4; ++n)
      out += "BLEU-" + std::to_string(n) + "\t" + fixed(bleu(pairs, n), 4) +
             "\n";
    out += "ROUGE-L\t" + fixed(rouge_l(pairs), 4) + "\n";
    out += "CIDEr\t" + fixed(cider(pairs), 4) + "\n";
    write_file(metrics_out, out, "metrics file");
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_iaa(const std::string& judgements_path, int categories, int ideal,
            const std::string& iaa_out, std::ostream& err) {
  try {
    std::vector<JudgementRow> rows = load_judgements(judgements_path);
    if (rows.empty()) throw PipelineError("judgement file holds no rows");
    if (ideal == 0) ideal = categories;

    // criterion -> item -> judge -> score
    std::map<std::string, std::map<std::string, std::map<std::string, int>>>
        table;
    for (const JudgementRow& r : rows) {
      auto& cell = table[r.criterion][r.item_id];
      if (!cell.emplace(r.judge_id, r.score).second)
        throw PipelineError("duplicate judgement for item '" + r.item_id +
                            "', judge '" + r.judge_id + "', criterion '" +
                            r.criterion + "'");
    }

    std::string out = "criterion\titems\tjudges\tkappa\tgamma\tmedian\tmode\n";
    for (const auto& [criterion, items] : table) {
      std::vector<std::string> judges;
      for (const auto& [item, cells] : items)
        for (const auto& [judge, score] : cells)
          if (std::find(judges.begin(), judges.end(), judge) == judges.end())
            judges.push_back(judge);
      std::sort(judges.begin(), judges.end());

      std::vector<std::vector<int>> matrix;
      std::vector<int> pooled;
      for (const auto& [item, cells] : items) {
        std::vector<int> row;
        for (const std::string& judge : judges) {
          auto it = cells.find(judge);
          if (it == cells.end())
            throw PipelineError("criterion '" + criterion + "': item '" +
                                item + "' lacks a score from judge '" + judge +
                                "'");
          row.push_back(it->second);
          pooled.push_back(it->second);
        }
        matrix.push_back(std::move(row));
      }

      JudgementMatrix jm(std::move(matrix), categories);
      double kappa = randolph_kappa(jm);
      std::optional<double> gamma = gamma_n(jm);
      OrdinalAggregate agg = aggregate_ordinal(pooled, ideal);

      out += criterion + "\t" + std::to_string(jm.items()) + "\t" +
             std::to_string(jm.judges()) + "\t" + fixed(kappa, 4) + "\t" +
             (gamma ? fixed(*gamma, 4) : std::string("NA")) + "\t" +
             fixed(agg.median, 1) + "\t" + std::to_string(agg.mode) + "\n";
    }
    write_file(iaa_out, out, "iaa file");
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace qgen
