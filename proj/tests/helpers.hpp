#ifndef MINPARSE_TESTS_HELPERS_HPP
#define MINPARSE_TESTS_HELPERS_HPP

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "minparse/treebank.hpp"

namespace test {

inline minparse::Sentence sentence(const std::vector<std::pair<std::string, std::string>>& words) {
  minparse::Sentence s;
  for (const auto& [form, tag] : words) s.tokens.push_back({form, tag});
  return s;
}

/// "I like sports" with like -> I (nsubj), like -> sports (dobj).
inline minparse::DepTree i_like_sports() {
  minparse::DepTree t;
  t.sentence = sentence({{"I", "PRP"}, {"like", "VBP"}, {"sports", "NNS"}});
  t.heads = {1, minparse::kRoot, 1};
  t.labels = {"nsubj", "root", "dobj"};
  return t;
}

inline const char* kILikeSports = "(S (NP (PRP I)) (VP (VBP like) (NP (NNS sports))))";

inline minparse::ConstTree brackets(const std::string& text) {
  std::istringstream in(text);
  auto trees = minparse::read_brackets(in);
  return trees.at(0);
}

/// (S (NP I) (VP like (NP sports))) with heads S -> VP, VP -> like, NP -> its word.
inline minparse::ConstTree i_like_sports_tree() {
  using namespace minparse;
  ConstTree t;
  t.sentence = sentence({{"I", "PRP"}, {"like", "VBP"}, {"sports", "NNS"}});
  auto np1 = make_internal("NP", {make_leaf(0)}, 0);
  auto np2 = make_internal("NP", {make_leaf(2)}, 0);
  auto vp = make_internal("VP", {make_leaf(1), np2}, 0);
  t.root = make_internal("S", {np1, vp}, 1);
  return t;
}

/// Scratch directory removed at scope exit.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("minparse_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace test

#endif  // MINPARSE_TESTS_HELPERS_HPP
