// Command-line front end for the question generation pipeline.

#include <array>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qgen/pipeline.hpp"

namespace {

std::optional<std::array<double, 4>> parse_lambdas(const std::string& text) {
  std::array<double, 4> out{};
  std::istringstream in(text);
  std::string field;
  int idx = 0;
  while (std::getline(in, field, ',')) {
    if (idx >= 4) return std::nullopt;
    try {
      size_t pos = 0;
      out[idx] = std::stod(field, &pos);
      if (pos != field.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    ++idx;
  }
  if (idx != 4) return std::nullopt;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency-tree template induction and question generation"};
  app.require_subcommand(1);

  qgen::CommonOptions opts;
  double alpha = 0.8;
  std::string lambdas_text;
  app.add_option("--config", opts.config_path,
                 "language config file (key=value)");
  app.add_option("--threads", opts.threads, "worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_option("--top-k", opts.top_k, "QA pairs kept per input sentence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  CLI::Option* alpha_opt = app.add_option(
      "--alpha", alpha, "weight of the n-gram score in the combined score");
  CLI::Option* lambdas_opt = app.add_option(
      "--lambdas", lambdas_text, "n-gram interpolation weights a,b,c,d");

  std::string dataset_path, corpus_path, input_path, hyp_path, refs_path,
      judgements_path;
  std::string templates_path = "templates.tpl";
  std::string guards_path = "guards.grd";
  std::string stats_path = "stats.tsv";
  std::string model_path = "model.qgm";
  std::string qa_path = "qa.jsonl";
  std::string metrics_path = "metrics.tsv";
  std::string iaa_path = "iaa.tsv";
  int categories = 4;
  int ideal = 0;

  CLI::App* induce =
      app.add_subcommand("induce", "induce templates and guards from a dataset");
  induce->fallthrough();
  induce->add_option("dataset", dataset_path, "dataset JSON Lines")->required();
  induce->add_option("--templates", templates_path, "templates output")
      ->capture_default_str();
  induce->add_option("--guards", guards_path, "guards output")
      ->capture_default_str();
  induce->add_option("--stats", stats_path, "statistics output")
      ->capture_default_str();

  CLI::App* train =
      app.add_subcommand("train", "train the scoring model");
  train->fallthrough();
  train->add_option("corpus", corpus_path, "pos-morph CoNLL-U corpus")
      ->required();
  train->add_option("dataset", dataset_path, "dataset JSON Lines")->required();
  train->add_option("--model", model_path, "model output")
      ->capture_default_str();

  CLI::App* generate =
      app.add_subcommand("generate", "generate ranked QA pairs for sentences");
  generate->fallthrough();
  generate->add_option("input", input_path, "input CoNLL-U sentences")
      ->required();
  generate->add_option("--templates", templates_path, "templates file")
      ->capture_default_str();
  generate->add_option("--guards", guards_path, "guards file")
      ->capture_default_str();
  generate->add_option("--model", model_path, "model file")
      ->capture_default_str();
  generate->add_option("--out", qa_path, "QA output JSON Lines")
      ->capture_default_str();

  CLI::App* eval = app.add_subcommand(
      "eval", "score generated questions against references");
  eval->fallthrough();
  eval->add_option("hyp", hyp_path,
                   "QA JSON Lines (or self-contained hyp/refs lines)")
      ->required();
  eval->add_option("refs", refs_path, "reference JSON Lines keyed by item id");
  eval->add_option("--out", metrics_path, "metric table output")
      ->capture_default_str();

  CLI::App* iaa =
      app.add_subcommand("iaa", "inter-annotator agreement from judgements");
  iaa->fallthrough();
  iaa->add_option("judgements", judgements_path, "judgement CSV")->required();
  iaa->add_option("--categories", categories, "number of score categories")
      ->check(CLI::Range(2, 100))
      ->capture_default_str();
  iaa->add_option("--ideal", ideal,
                  "best score on the scale (default: the top category)");
  iaa->add_option("--out", iaa_path, "agreement table output")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : qgen::kExitError;
  }

  if (alpha_opt->count() > 0) {
    if (alpha < 0.0 || alpha > 1.0) {
      std::cerr << "error: --alpha must lie in [0,1]\n";
      return qgen::kExitError;
    }
    opts.alpha = alpha;
  }
  if (lambdas_opt->count() > 0) {
    std::optional<std::array<double, 4>> l = parse_lambdas(lambdas_text);
    if (!l) {
      std::cerr << "error: --lambdas expects four comma-separated numbers\n";
      return qgen::kExitError;
    }
    opts.lambdas = *l;
  }
  if (ideal != 0 && (ideal < 1 || ideal > categories)) {
    std::cerr << "error: --ideal must lie in 1..categories\n";
    return qgen::kExitError;
  }

  if (induce->parsed())
    return qgen::run_induce(dataset_path, opts, templates_path, guards_path,
                            stats_path, std::cerr);
  if (train->parsed())
    return qgen::run_train(corpus_path, dataset_path, opts, model_path,
                           std::cerr);
  if (generate->parsed())
    return qgen::run_generate(input_path, templates_path, guards_path,
                              model_path, opts, qa_path, std::cerr);
  if (eval->parsed())
    return qgen::run_eval(hyp_path, refs_path, opts, metrics_path, std::cerr);
  if (iaa->parsed())
    return qgen::run_iaa(judgements_path, categories, ideal, iaa_path,
                         std::cerr);
  return qgen::kExitError;
}
