#pragma once

#include <string>
#include <vector>

#include "qgen/conllu.hpp"
#include "qgen/induction.hpp"

// Hand-built trees and a small synthetic dataset shared by the test
// binaries. Everything here is deterministic.
namespace testfx {

// "id form lemma upos feats head deprel"; feats as "A=B|C=D" or "".
qgen::DepNode mk(int id, const std::string& form, const std::string& lemma,
                 const std::string& upos, const std::string& feats, int head,
                 const std::string& deprel);

// "Tim plays basketball with friends and family every Tuesday."
// (without the final punctuation), with its "When does Tim play
// basketball with friends" question and the answer "every Tuesday".
qgen::DepTree tim_sentence();
qgen::DepTree tim_question();
qgen::DatasetItem tim_item();

// Lowercase copular sentence "the longest river in brazil is the amazon
// river" with the question "what is the longest river in brazil"; the
// duplicated "the" and "river" give the transformation slots with two
// candidates each.
qgen::DepTree brazil_sentence();
qgen::DepTree brazil_question();

// "Ericsson pays dividends to the shareholders every first quarter of the
// year" - a generation target whose token ids differ from the trees the
// templates were induced from.
qgen::DepTree ericsson_sentence();

// 50 items over 8 documents mixing sentence shapes:
//   - transitive verb with a conjoined oblique ("... with friends and
//     family every Tuesday"),
//   - the same without the conjunction,
//   - copular definition sentences,
//   - answers matching only inside a token (subword),
//   - matched but unsatisfactory question/sentence pairs,
//   - answers absent from the context.
// The first three shapes induce exactly one template each.
std::vector<qgen::DatasetItem> toy_dataset();
std::string toy_dataset_jsonl();

// All context sentences of toy_dataset(), for language-model training.
std::string toy_corpus_conllu();

// Three generation inputs: the Ericsson sentence, a copular sentence and a
// transitive sentence with vocabulary unseen in training.
std::string toy_input_conllu();

std::string dataset_to_jsonl(const std::vector<qgen::DatasetItem>& items);

// Self-deleting temporary directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  // Writes content to path()/name and returns the full path.
  std::string write(const std::string& name, const std::string& content) const;

 private:
  std::string path_;
};

std::string read_file(const std::string& path);

}  // namespace testfx
