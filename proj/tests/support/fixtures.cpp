#include "fixtures.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace testfx {

using qgen::DatasetItem;
using qgen::DepNode;
using qgen::DepTree;

DepNode mk(int id, const std::string& form, const std::string& lemma,
           const std::string& upos, const std::string& feats, int head,
           const std::string& deprel) {
  DepNode n;
  n.id = id;
  n.form = form;
  n.lemma = lemma;
  n.upos = upos;
  if (!feats.empty()) {
    size_t start = 0;
    while (start <= feats.size()) {
      size_t bar = feats.find('|', start);
      if (bar == std::string::npos) {
        n.feats.push_back(feats.substr(start));
        break;
      }
      n.feats.push_back(feats.substr(start, bar - start));
      start = bar + 1;
    }
  }
  n.head = head;
  n.deprel = deprel;
  return n;
}

namespace {

const std::string kFin3Sg = "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin";
const std::string kPast3Sg = "Mood=Ind|Number=Sing|Person=3|Tense=Past|VerbForm=Fin";

struct WordPair {
  std::string form;
  std::string lemma;
};

struct TimeWord {
  std::string form;
  std::string upos;  // PROPN for day names, NOUN for times of day
};

const std::vector<std::string> kSubjects = {
    "Tim",   "Anna",  "Maria", "Peter", "Lena",  "Oscar", "Ivan",
    "Nadia", "Omar",  "Jonas", "Clara", "Tomas", "Elena", "Viktor",
    "Sofia", "Marco", "Alice", "Hugo",  "Freya", "Daniel"};
const std::vector<WordPair> kVerbs = {
    {"plays", "play"},     {"visits", "visit"}, {"watches", "watch"},
    {"paints", "paint"},   {"cleans", "clean"}, {"feeds", "feed"},
    {"teaches", "teach"},  {"reads", "read"},   {"sings", "sing"},
    {"cooks", "cook"}};
const std::vector<std::string> kObjects = {
    "basketball", "chess", "football", "tennis",  "opera",
    "dinner",     "grammar", "poetry", "jazz",    "soup"};
const std::vector<WordPair> kObliques = {{"friends", "friend"},
                                         {"neighbours", "neighbour"},
                                         {"students", "student"},
                                         {"colleagues", "colleague"},
                                         {"cousins", "cousin"}};
const std::vector<std::string> kConjuncts = {"family", "staff", "kin", "crew"};
const std::vector<TimeWord> kTimes = {
    {"Monday", "PROPN"}, {"Tuesday", "PROPN"}, {"noon", "NOUN"},
    {"Friday", "PROPN"}, {"morning", "NOUN"},  {"Sunday", "PROPN"},
    {"evening", "NOUN"}};

// "<subj> <verb> <obj> with <obl> and <conj> every <time>"
DepTree conj_sentence(const std::string& subj, const WordPair& verb,
                      const std::string& obj, const WordPair& obl,
                      const std::string& conj, const TimeWord& time,
                      const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, subj, subj, "PROPN", "Number=Sing", 2, "nsubj"));
  n.push_back(mk(2, verb.form, verb.lemma, "VERB", kFin3Sg, 0, "root"));
  n.push_back(mk(3, obj, obj, "NOUN", "Number=Sing", 2, "obj"));
  n.push_back(mk(4, "with", "with", "ADP", "", 5, "case"));
  n.push_back(mk(5, obl.form, obl.lemma, "NOUN", "Number=Plur", 2, "obl"));
  n.push_back(mk(6, "and", "and", "CCONJ", "", 7, "cc"));
  n.push_back(mk(7, conj, conj, "NOUN", "Number=Sing", 5, "conj"));
  n.push_back(mk(8, "every", "every", "DET", "", 9, "det"));
  n.push_back(mk(9, time.form, time.form, time.upos, "Number=Sing", 2,
                 "obl:tmod"));
  return DepTree(std::move(n), sent_id);
}

// "<subj> <verb> <obj> with <obl> every <time>"
DepTree plain_sentence(const std::string& subj, const WordPair& verb,
                       const std::string& obj, const WordPair& obl,
                       const TimeWord& time, const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, subj, subj, "PROPN", "Number=Sing", 2, "nsubj"));
  n.push_back(mk(2, verb.form, verb.lemma, "VERB", kFin3Sg, 0, "root"));
  n.push_back(mk(3, obj, obj, "NOUN", "Number=Sing", 2, "obj"));
  n.push_back(mk(4, "with", "with", "ADP", "", 5, "case"));
  n.push_back(mk(5, obl.form, obl.lemma, "NOUN", "Number=Plur", 2, "obl"));
  n.push_back(mk(6, "every", "every", "DET", "", 7, "det"));
  n.push_back(mk(7, time.form, time.form, time.upos, "Number=Sing", 2,
                 "obl:tmod"));
  return DepTree(std::move(n), sent_id);
}

// "When does <subj> <verb-lemma> <obj> with <obl>" - the aux token has no
// counterpart in the source sentences, the verb matches by lemma only.
DepTree when_question(const std::string& subj, const WordPair& verb,
                      const std::string& obj, const WordPair& obl,
                      const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, "When", "when", "ADV", "PronType=Int", 4, "advmod"));
  n.push_back(mk(2, "does", "do", "AUX", kFin3Sg, 4, "aux"));
  n.push_back(mk(3, subj, subj, "PROPN", "Number=Sing", 4, "nsubj"));
  n.push_back(mk(4, verb.lemma, verb.lemma, "VERB", "VerbForm=Inf", 0, "root"));
  n.push_back(mk(5, obj, obj, "NOUN", "Number=Sing", 4, "obj"));
  n.push_back(mk(6, "with", "with", "ADP", "", 7, "case"));
  n.push_back(mk(7, obl.form, obl.lemma, "NOUN", "Number=Plur", 4, "obl"));
  return DepTree(std::move(n), sent_id);
}

// "the <adj> <noun> in <place> is the <prop> <noun>", all lowercase so the
// repeated tokens really are equal.
DepTree copular_sentence(const std::string& adj, const std::string& adj_lemma,
                         const std::string& noun, const std::string& place,
                         const std::string& prop, const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, "the", "the", "DET", "", 3, "det"));
  n.push_back(mk(2, adj, adj_lemma, "ADJ", "", 3, "amod"));
  n.push_back(mk(3, noun, noun, "NOUN", "", 9, "nsubj"));
  n.push_back(mk(4, "in", "in", "ADP", "", 5, "case"));
  n.push_back(mk(5, place, place, "PROPN", "", 3, "nmod"));
  n.push_back(mk(6, "is", "be", "AUX", "", 9, "cop"));
  n.push_back(mk(7, "the", "the", "DET", "", 9, "det"));
  n.push_back(mk(8, prop, prop, "PROPN", "", 9, "compound"));
  n.push_back(mk(9, noun, noun, "NOUN", "", 0, "root"));
  return DepTree(std::move(n), sent_id);
}

// "what is the <adj> <noun> in <place>"
DepTree copular_question(const std::string& adj, const std::string& adj_lemma,
                         const std::string& noun, const std::string& place,
                         const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, "what", "what", "PRON", "PronType=Int", 5, "nsubj"));
  n.push_back(mk(2, "is", "be", "AUX", "", 5, "cop"));
  n.push_back(mk(3, "the", "the", "DET", "", 5, "det"));
  n.push_back(mk(4, adj, adj_lemma, "ADJ", "", 5, "amod"));
  n.push_back(mk(5, noun, noun, "NOUN", "", 0, "root"));
  n.push_back(mk(6, "in", "in", "ADP", "", 7, "case"));
  n.push_back(mk(7, place, place, "PROPN", "", 5, "nmod"));
  return DepTree(std::move(n), sent_id);
}

// "<subj> <verb> <obj> to the <obl> every <adj> <unit> of the year"
DepTree payout_sentence(const std::string& subj, const WordPair& verb,
                        const std::string& obj, const std::string& obl,
                        const std::string& adj, const std::string& unit,
                        const std::string& sent_id) {
  std::vector<DepNode> n;
  n.push_back(mk(1, subj, subj, "PROPN", "Number=Sing", 2, "nsubj"));
  n.push_back(mk(2, verb.form, verb.lemma, "VERB", kFin3Sg, 0, "root"));
  n.push_back(mk(3, obj, obj, "NOUN", "Number=Plur", 2, "obj"));
  n.push_back(mk(4, "to", "to", "ADP", "", 6, "case"));
  n.push_back(mk(5, "the", "the", "DET", "Definite=Def", 6, "det"));
  n.push_back(mk(6, obl, obl, "NOUN", "Number=Plur", 2, "obl"));
  n.push_back(mk(7, "every", "every", "DET", "", 9, "det"));
  n.push_back(mk(8, adj, adj, "ADJ", "Degree=Pos", 9, "amod"));
  n.push_back(mk(9, unit, unit, "NOUN", "Number=Sing", 2, "obl:tmod"));
  n.push_back(mk(10, "of", "of", "ADP", "", 12, "case"));
  n.push_back(mk(11, "the", "the", "DET", "Definite=Def", 12, "det"));
  n.push_back(mk(12, "year", "year", "NOUN", "Number=Sing", 9, "nmod"));
  return DepTree(std::move(n), sent_id);
}

}  // namespace

DepTree tim_sentence() {
  return conj_sentence("Tim", {"plays", "play"}, "basketball",
                       {"friends", "friend"}, "family", {"Tuesday", "PROPN"},
                       "tim-1");
}

DepTree tim_question() {
  return when_question("Tim", {"plays", "play"}, "basketball",
                       {"friends", "friend"}, "tim-q");
}

DatasetItem tim_item() {
  DatasetItem item;
  item.id = "tim";
  item.doc_id = "doc1";
  item.answer = "every Tuesday";
  item.context.push_back(tim_sentence());
  item.question = tim_question();
  return item;
}

DepTree brazil_sentence() {
  return copular_sentence("longest", "long", "river", "brazil", "amazon",
                          "brazil-1");
}

DepTree brazil_question() {
  return copular_question("longest", "long", "river", "brazil", "brazil-q");
}

DepTree ericsson_sentence() {
  std::vector<DepNode> n;
  n.push_back(mk(1, "Ericsson", "Ericsson", "PROPN", "Number=Sing", 2,
                 "nsubj"));
  n.push_back(mk(2, "pays", "pay", "VERB", kFin3Sg, 0, "root"));
  n.push_back(mk(3, "dividends", "dividend", "NOUN", "Number=Plur", 2, "obj"));
  n.push_back(mk(4, "to", "to", "ADP", "", 6, "case"));
  n.push_back(mk(5, "the", "the", "DET", "Definite=Def", 6, "det"));
  n.push_back(mk(6, "shareholders", "shareholder", "NOUN", "Number=Plur", 2,
                 "obl"));
  n.push_back(mk(7, "every", "every", "DET", "", 9, "det"));
  n.push_back(mk(8, "first", "first", "ADJ", "Degree=Pos", 9, "amod"));
  n.push_back(mk(9, "quarter", "quarter", "NOUN", "Number=Sing", 2,
                 "obl:tmod"));
  n.push_back(mk(10, "of", "of", "ADP", "", 12, "case"));
  n.push_back(mk(11, "the", "the", "DET", "Definite=Def", 12, "det"));
  n.push_back(mk(12, "year", "year", "NOUN", "Number=Sing", 9, "nmod"));
  return DepTree(std::move(n), "eric-1");
}

std::vector<DatasetItem> toy_dataset() {
  std::vector<DatasetItem> items;
  auto add = [&](DepTree sentence, DepTree question, std::string answer) {
    DatasetItem item;
    size_t i = items.size();
    item.id = "item" + std::string(i + 1 < 10 ? "0" : "") +
              std::to_string(i + 1);
    item.doc_id = "doc" + std::to_string(i % 8 + 1);
    item.answer = std::move(answer);
    item.context.push_back(std::move(sentence));
    item.question = std::move(question);
    items.push_back(std::move(item));
  };
  auto sid = [&](const char* prefix) {
    return std::string(prefix) + std::to_string(items.size() + 1);
  };

  // 20 conjoined-oblique items.
  for (size_t k = 0; k < 20; ++k) {
    const auto& subj = kSubjects[k];
    const auto& verb = kVerbs[k % kVerbs.size()];
    const auto& obj = kObjects[(k + 3) % kObjects.size()];
    const auto& obl = kObliques[k % kObliques.size()];
    const auto& conj = kConjuncts[k % kConjuncts.size()];
    const auto& time = kTimes[k % kTimes.size()];
    add(conj_sentence(subj, verb, obj, obl, conj, time, sid("s")),
        when_question(subj, verb, obj, obl, sid("q")),
        "every " + time.form);
  }

  // 14 plain-oblique items.
  for (size_t k = 0; k < 14; ++k) {
    const auto& subj = kSubjects[(k + 9) % kSubjects.size()];
    const auto& verb = kVerbs[(k + 5) % kVerbs.size()];
    const auto& obj = kObjects[k % kObjects.size()];
    const auto& obl = kObliques[(k + 2) % kObliques.size()];
    const auto& time = kTimes[(k + 3) % kTimes.size()];
    add(plain_sentence(subj, verb, obj, obl, time, sid("s")),
        when_question(subj, verb, obj, obl, sid("q")),
        "every " + time.form);
  }

  // 6 copular items.
  {
    struct Row {
      const char *adj, *adj_lemma, *noun, *place, *prop;
    };
    const Row rows[] = {
        {"longest", "long", "river", "brazil", "amazon"},
        {"oldest", "old", "bridge", "portugal", "lisbon"},
        {"deepest", "deep", "lake", "siberia", "baikal"},
        {"tallest", "tall", "tower", "japan", "tokyo"},
        {"largest", "large", "desert", "africa", "sahara"},
        {"busiest", "busy", "airport", "georgia", "atlanta"},
    };
    for (const Row& r : rows)
      add(copular_sentence(r.adj, r.adj_lemma, r.noun, r.place, r.prop,
                           sid("s")),
          copular_question(r.adj, r.adj_lemma, r.noun, r.place, sid("q")),
          std::string("the ") + r.prop + " " + r.noun);
  }

  // 4 subword items: the answer only matches inside a compound token.
  {
    struct Row {
      const char *subj, *compound, *answer;
    };
    const Row rows[] = {
        {"Anna", "bluebird", "blue"},
        {"Peter", "sunflower", "sun"},
        {"Lena", "notebook", "note"},
        {"Oscar", "firefly", "fire"},
    };
    for (const Row& r : rows) {
      std::vector<DepNode> s;
      s.push_back(mk(1, r.subj, r.subj, "PROPN", "Number=Sing", 2, "nsubj"));
      s.push_back(mk(2, "sees", "see", "VERB", kFin3Sg, 0, "root"));
      s.push_back(mk(3, "a", "a", "DET", "", 4, "det"));
      s.push_back(mk(4, r.compound, r.compound, "NOUN", "Number=Sing", 2,
                     "obj"));
      s.push_back(mk(5, "today", "today", "NOUN", "Number=Sing", 2,
                     "obl:tmod"));
      std::vector<DepNode> q;
      q.push_back(mk(1, "what", "what", "PRON", "PronType=Int", 4, "obj"));
      q.push_back(mk(2, "does", "do", "AUX", kFin3Sg, 4, "aux"));
      q.push_back(mk(3, r.subj, r.subj, "PROPN", "Number=Sing", 4, "nsubj"));
      q.push_back(mk(4, "see", "see", "VERB", "VerbForm=Inf", 0, "root"));
      add(DepTree(std::move(s), sid("s")), DepTree(std::move(q), sid("q")),
          r.answer);
    }
  }

  // 3 matched but unsatisfactory items: the question shares no token with
  // the sentence beyond its question word.
  {
    struct Row {
      const char *noun, *verb, *verb_lemma, *time;
    };
    const Row rows[] = {
        {"parcel", "arrived", "arrive", "yesterday"},
        {"letter", "vanished", "vanish", "midnight"},
        {"shipment", "surfaced", "surface", "dawn"},
    };
    for (const Row& r : rows) {
      std::vector<DepNode> s;
      s.push_back(mk(1, "the", "the", "DET", "", 2, "det"));
      s.push_back(mk(2, r.noun, r.noun, "NOUN", "Number=Sing", 3, "nsubj"));
      s.push_back(mk(3, r.verb, r.verb_lemma, "VERB", kPast3Sg, 0, "root"));
      s.push_back(mk(4, r.time, r.time, "NOUN", "Number=Sing", 3, "obl:tmod"));
      std::vector<DepNode> q;
      q.push_back(mk(1, "when", "when", "ADV", "PronType=Int", 4, "advmod"));
      q.push_back(mk(2, "did", "do", "AUX", "", 4, "aux"));
      q.push_back(mk(3, "it", "it", "PRON", "", 4, "nsubj"));
      q.push_back(mk(4, "come", "come", "VERB", "VerbForm=Inf", 0, "root"));
      add(DepTree(std::move(s), sid("s")), DepTree(std::move(q), sid("q")),
          r.time);
    }
  }

  // 3 items whose answer is absent from the context entirely.
  {
    struct Row {
      const char *noun, *answer;
    };
    const Row rows[] = {
        {"train", "zeppelin"},
        {"tram", "unicorn"},
        {"ferry", "comet"},
    };
    for (const Row& r : rows) {
      std::vector<DepNode> s;
      s.push_back(mk(1, "the", "the", "DET", "", 2, "det"));
      s.push_back(mk(2, r.noun, r.noun, "NOUN", "Number=Sing", 4, "nsubj"));
      s.push_back(mk(3, "was", "be", "AUX", "", 4, "cop"));
      s.push_back(mk(4, "late", "late", "ADJ", "", 0, "root"));
      std::vector<DepNode> q;
      q.push_back(mk(1, "when", "when", "ADV", "PronType=Int", 5, "advmod"));
      q.push_back(mk(2, "was", "be", "AUX", "", 5, "cop"));
      q.push_back(mk(3, "the", "the", "DET", "", 4, "det"));
      q.push_back(mk(4, r.noun, r.noun, "NOUN", "Number=Sing", 5, "nsubj"));
      q.push_back(mk(5, "late", "late", "ADJ", "", 0, "root"));
      add(DepTree(std::move(s), sid("s")), DepTree(std::move(q), sid("q")),
          r.answer);
    }
  }

  return items;
}

std::string dataset_to_jsonl(const std::vector<DatasetItem>& items) {
  std::string out;
  for (const DatasetItem& item : items) {
    nlohmann::ordered_json obj;
    obj["id"] = item.id;
    obj["doc_id"] = item.doc_id;
    obj["context_conllu"] = qgen::to_conllu(item.context);
    obj["question_conllu"] = qgen::to_conllu(item.question);
    obj["answer"] = item.answer;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string toy_dataset_jsonl() { return dataset_to_jsonl(toy_dataset()); }

std::string toy_corpus_conllu() {
  std::vector<DepTree> trees;
  for (const DatasetItem& item : toy_dataset())
    for (const DepTree& t : item.context) trees.push_back(t);
  // corpus-only payout sentences; no dataset item shares this shape
  trees.push_back(payout_sentence("Nokia", {"sends", "send"}, "bonuses",
                                  "employees", "last", "month", "c41"));
  trees.push_back(payout_sentence("Volvo", {"ships", "ship"}, "parts",
                                  "dealers", "first", "week", "c42"));
  trees.push_back(payout_sentence("Telia", {"grants", "grant"}, "refunds",
                                  "callers", "second", "half", "c43"));
  trees.push_back(payout_sentence("Skanska", {"owes", "owe"}, "fees",
                                  "lenders", "third", "quarter", "c44"));
  trees.push_back(payout_sentence("Statoil", {"pays", "pay"}, "salaries",
                                  "drivers", "final", "day", "c45"));
  trees.push_back(payout_sentence("Maersk", {"mails", "mail"}, "invoices",
                                  "clients", "fourth", "term", "c46"));
  trees.push_back(payout_sentence("Orsted", {"offers", "offer"}, "rebates",
                                  "tenants", "closing", "stretch", "c47"));
  trees.push_back(payout_sentence("Vattenfall", {"awards", "award"}, "grants",
                                  "scholars", "opening", "session", "c48"));
  return qgen::to_conllu(trees);
}

std::string toy_input_conllu() {
  std::vector<DepTree> trees;
  trees.push_back(ericsson_sentence());
  trees.push_back(copular_sentence("brightest", "bright", "star", "orion",
                                   "sirius", "decoy-1"));
  trees.push_back([] {
    std::vector<DepNode> n;
    n.push_back(mk(1, "Zorblat", "Zorblat", "PROPN", "Number=Sing", 2,
                   "nsubj"));
    n.push_back(mk(2, "collects", "collect", "VERB", kFin3Sg, 0, "root"));
    n.push_back(mk(3, "pebbles", "pebble", "NOUN", "Number=Plur", 2, "obj"));
    n.push_back(mk(4, "with", "with", "ADP", "", 5, "case"));
    n.push_back(mk(5, "strangers", "stranger", "NOUN", "Number=Plur", 2,
                   "obl"));
    n.push_back(mk(6, "and", "and", "CCONJ", "", 7, "cc"));
    n.push_back(mk(7, "pilgrims", "pilgrim", "NOUN", "Number=Plur", 5,
                   "conj"));
    n.push_back(mk(8, "every", "every", "DET", "", 9, "det"));
    n.push_back(mk(9, "solstice", "solstice", "NOUN", "Number=Sing", 2,
                   "obl:tmod"));
    return DepTree(std::move(n), "decoy-2");
  }());
  // guard-compatible skeletons whose morphology the model has never seen;
  // their candidates score low and sink below the pooled mean
  auto noise = [](const std::string& subj, const WordPair& verb,
                  const std::string& obj, const std::string& obl,
                  const std::string& time, const std::string& sent_id) {
    std::vector<DepNode> n;
    n.push_back(mk(1, subj, subj, "PROPN", "Abbr=Yes", 2, "nsubj"));
    n.push_back(mk(2, verb.form, verb.lemma, "VERB", kFin3Sg, 0, "root"));
    n.push_back(mk(3, obj, obj, "NOUN", "Abbr=Yes", 2, "obj"));
    n.push_back(mk(4, "amid", "amid", "ADP", "Abbr=Yes", 5, "case"));
    n.push_back(mk(5, obl, obl, "NOUN", "Abbr=Yes", 2, "obl"));
    n.push_back(mk(6, "each", "each", "DET", "Abbr=Yes", 7, "det"));
    n.push_back(mk(7, time, time, "NOUN", "Abbr=Yes", 2, "obl:tmod"));
    return DepTree(std::move(n), sent_id);
  };
  trees.push_back(noise("Vex", {"quibbles", "quibble"}, "riddles", "echoes",
                        "eclipse", "noise-1"));
  trees.push_back(noise("Zil", {"mutters", "mutter"}, "omens", "embers",
                        "equinox", "noise-2"));
  return qgen::to_conllu(trees);
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "qgen-test-XXXXXX")
                         .string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data()))
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  path_ = buf.data();
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::write(const std::string& name,
                           const std::string& content) const {
  std::string full = path_ + "/" + name;
  std::ofstream out(full, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + full);
  return full;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace testfx
