#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "minparse/synthetic.hpp"
#include "minparse/treebank.hpp"

using namespace minparse;

namespace {

std::vector<DepTree> conll(const std::string& text) {
  std::istringstream in(text);
  return read_conll(in);
}

std::string error_of(const std::string& text) {
  try {
    conll(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("read_conll maps columns and HEAD=0 to ROOT") {
  const auto trees = conll(
      "1\tI\t_\t_\tPRP\t_\t2\tnsubj\t_\t_\n"
      "2\tlike\t_\t_\tVBP\t_\t0\troot\t_\t_\n");
  REQUIRE(trees.size() == 1);
  const DepTree& t = trees[0];
  CHECK(t.sentence[0].form == "I");
  CHECK(t.sentence[0].tag == "PRP");
  CHECK(t.heads == std::vector<int>{1, kRoot});
  CHECK(t.labels == std::vector<std::string>{"nsubj", "root"});
}

TEST_CASE("read_conll on an empty stream") {
  CHECK(conll("").empty());
  CHECK(conll("\n\n").empty());
}

TEST_CASE("read_conll rejects malformed input with a line number") {
  const std::string cycle =
      "1\ta\t_\t_\tX\t_\t2\tdep\t_\t_\n"
      "2\tb\t_\t_\tX\t_\t1\tdep\t_\t_\n"
      "3\tc\t_\t_\tX\t_\t0\troot\t_\t_\n";
  CHECK(error_of(cycle).find("cycle") != std::string::npos);
  CHECK(error_of(cycle).rfind("line ", 0) == 0);

  CHECK(error_of("1\ta\t_\t_\tX\t_\t0\n").find("line 1") != std::string::npos);  // too few columns
  CHECK(error_of("1\ta\t_\t_\tX\t_\t0\troot\t_\t_\n1\tb\t_\t_\tX\t_\t1\tdep\t_\t_\n").find("duplicate") !=
        std::string::npos);
  CHECK(error_of("1\ta\t_\t_\tX\t_\t0\troot\t_\t_\n2\tb\t_\t_\tX\t_\t5\tdep\t_\t_\n").find("line 2") !=
        std::string::npos);
  CHECK_FALSE(error_of("1\ta\t_\t_\tX\t_\t0\troot\t_\t_\n2\tb\t_\t_\tX\t_\t0\troot\t_\t_\n").empty());
}

TEST_CASE("read_conll skips comment lines") {
  const auto trees = conll("# sent_id = 1\n1\ta\t_\t_\tX\t_\t0\troot\t_\t_\n");
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].size() == 1);
}

TEST_CASE("write_conll round-trips") {
  SyntheticRng rng(5);
  std::vector<DepTree> trees = {test::i_like_sports()};
  for (int i = 0; i < 50; ++i) trees.push_back(random_projective_tree(rng, 1 + i % 20));
  std::ostringstream out;
  write_conll(out, trees);
  CHECK(conll(out.str()) == trees);
}

TEST_CASE("projectivity") {
  CHECK(test::i_like_sports().projective());
  DepTree crossing;
  crossing.sentence = test::sentence({{"a", "X"}, {"b", "X"}, {"c", "X"}, {"d", "X"}});
  crossing.heads = {2, 3, kRoot, 2};  // 0<-2 crosses 1<-3
  crossing.labels = {"x", "x", "root", "x"};
  CHECK_FALSE(crossing.projective());
}

TEST_CASE("read_brackets folds preterminals into leaves") {
  const ConstTree t = test::brackets(test::kILikeSports);
  CHECK(t.sentence == test::sentence({{"I", "PRP"}, {"like", "VBP"}, {"sports", "NNS"}}));
  CHECK(count_internal(*t.root) == 4);
  CHECK(t.root->label == "S");
  CHECK(t.root->children.size() == 2);
  CHECK(t.root->children[0]->label == "NP");
  CHECK(t.root->children[0]->children[0]->leaf == 0);
  CHECK(t.root->head == -1);
  CHECK(t == test::i_like_sports_tree());

  const ConstTree dog = test::brackets("(NP (NN dog))");
  CHECK(count_internal(*dog.root) == 1);
  CHECK(dog.root->children[0]->is_leaf());
}

TEST_CASE("read_brackets errors") {
  auto fails_with = [](const std::string& text, const std::string& what) {
    try {
      test::brackets(text);
    } catch (const ParseError& e) {
      return std::string(e.what()).find(what) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("((S (NP (PRP I))", "unbalanced"));
  CHECK(fails_with("(S (NP (PRP I)) ())", "empty constituent"));
  CHECK(fails_with("(S (NP))", "no children"));
}

TEST_CASE("read_brackets normalises treebank decorations") {
  const ConstTree t = test::brackets("( (S (NP-SBJ-1 (PRP I)) (VP (VBP like) (NP (-NONE- *T*-1)) (NP (NNS sports)))) )");
  CHECK(to_brackets(t) == test::kILikeSports);
  const ConstTree paren = test::brackets("(NP (-LRB- -LRB-) (NN x) (-RRB- -RRB-))");
  CHECK(paren.sentence[0].form == "-LRB-");
}

TEST_CASE("write_brackets round-trips") {
  SyntheticRng rng(9);
  std::vector<ConstTree> trees = {test::brackets(test::kILikeSports), test::brackets("(NP (NN dog))"),
                                  test::brackets("(NP (NP (NN dog)))")};
  for (int i = 0; i < 50; ++i) trees.push_back(random_const_tree(rng, 2 + i % 15));
  std::ostringstream out;
  write_brackets(out, trees);
  std::istringstream in(out.str());
  CHECK(read_brackets(in) == trees);
  CHECK(to_brackets(trees[0]) == test::kILikeSports);
}

TEST_CASE("tagged text and head-less CoNLL inputs") {
  std::istringstream tagged("I/PRP like/VBP sports/NNS\n\na/b/DT x/NN\n");
  const auto s = read_tagged_text(tagged);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == test::i_like_sports().sentence);
  CHECK(s[1][0].form == "a/b");

  std::istringstream blank("1\tI\t_\t_\tPRP\t_\t_\t_\t_\t_\n2\tlike\t_\t_\tVBP\t_\t_\t_\t_\t_\n");
  const auto b = read_conll_sentences(blank);
  REQUIRE(b.size() == 1);
  CHECK(b[0].size() == 2);
}
