#include "doctest.h"
#include "helpers.hpp"
#include "minparse/vocab.hpp"

using namespace minparse;

namespace {

std::vector<DepTree> corpus_with_counts() {
  std::vector<DepTree> corpus;
  for (int i = 0; i < 5; ++i) {
    DepTree t;
    t.sentence = test::sentence({{"I", "PRP"}, {"like", "VBP"}});
    t.heads = {1, kRoot};
    t.labels = {"nsubj", "root"};
    corpus.push_back(t);
  }
  corpus.push_back(test::i_like_sports());
  return corpus;
}

}  // namespace

TEST_CASE("rare forms map to UNK") {
  const Vocab v = build_vocab(corpus_with_counts(), 2);
  CHECK(v.forms.id("sports") == Lexicon::kUnk);
  CHECK(v.forms.id("like") > Lexicon::kUnk);
  CHECK(v.forms.count(v.forms.id("like")) == 6);
  CHECK(v.tags.id("NNS") > Lexicon::kUnk);  // tags are fully enumerated
  CHECK(v.dep_labels.id("dobj") > Lexicon::kUnk);
  CHECK(v.stats.unk_types == 1);
  CHECK(v.stats.unk_tokens == 1);
}

TEST_CASE("min_form_count 1 keeps every training form") {
  const Vocab v = build_vocab(corpus_with_counts(), 1);
  for (const auto& t : corpus_with_counts())
    for (const auto& tok : t.sentence.tokens) CHECK(v.forms.id(tok.form) != Lexicon::kUnk);
  CHECK(v.stats.unk_types == 0);
}

TEST_CASE("reserved ids exist in every family") {
  const Vocab v = build_vocab(std::vector<ConstTree>{test::i_like_sports_tree()}, 1);
  for (const Lexicon* l : {&v.forms, &v.tags, &v.nonterminals, &v.dep_labels}) {
    CHECK(l->str(Lexicon::kNone) == "<NONE>");
    CHECK(l->str(Lexicon::kUnk) == "<UNK>");
  }
  CHECK(v.nonterminals.real_size() == 3);  // S, NP, VP
  CHECK(v.nonterminals.str(2) == "S");     // first-occurrence order, top-down
}

TEST_CASE("vocabulary ids round-trip through JSON") {
  const Vocab v = build_vocab(corpus_with_counts(), 2);
  const Vocab back = Vocab::from_json(nlohmann::json::parse(v.to_json().dump()));
  CHECK(back == v);
  CHECK(back.hash() == v.hash());
  for (const auto& s : {"I", "like", "sports", "zzz"}) CHECK(back.forms.id(s) == v.forms.id(s));
}

TEST_CASE("empty corpus is an error") {
  CHECK_THROWS_AS(build_vocab(std::vector<DepTree>{}, 2), std::invalid_argument);
}
