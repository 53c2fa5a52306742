#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>

namespace qgen {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;         // ran and produced output
inline constexpr int kExitError = 1;
inline constexpr int kExitEmpty = 2;      // ran fine but produced nothing

struct CommonOptions {
  std::string config_path;  // empty = built-in defaults (all switches off)
  int threads = 1;
  int top_k = 1;
  std::optional<double> alpha;                      // overrides the model
  std::optional<std::array<double, 4>> lambdas;     // overrides the model
};

// dataset -> templates + guards + induction statistics.
int run_induce(const std::string& dataset_path, const CommonOptions& opts,
               const std::string& templates_out, const std::string& guards_out,
               const std::string& stats_out, std::ostream& err);

// pos-morph corpus + dataset -> scoring model.
int run_train(const std::string& corpus_path, const std::string& dataset_path,
              const CommonOptions& opts, const std::string& model_out,
              std::ostream& err);

// sentences + induction artifacts + model -> ranked QA pairs.
int run_generate(const std::string& input_path,
                 const std::string& templates_path,
                 const std::string& guards_path, const std::string& model_path,
                 const CommonOptions& opts, const std::string& qa_out,
                 std::ostream& err);

// Top-ranked question per item against references -> metric table.
// refs_path empty: hyp_path is self-contained {"hyp","refs"} JSON Lines.
int run_eval(const std::string& hyp_path, const std::string& refs_path,
             const CommonOptions& opts, const std::string& metrics_out,
             std::ostream& err);

// Judgement CSV -> per-criterion agreement and score aggregates. ideal 0
// means "top category is best".
int run_iaa(const std::string& judgements_path, int categories, int ideal,
            const std::string& iaa_out, std::ostream& err);

}  // namespace qgen
