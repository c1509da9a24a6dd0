#ifndef MINPARSE_SYNTHETIC_HPP
#define MINPARSE_SYNTHETIC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minparse/treebank.hpp"

namespace minparse {

using SyntheticRng = std::mt19937_64;

/// Uniformly shaped random projective tree: a random root splits the span and
/// each side is built recursively under it. Labels, forms and tags come from
/// small fixed inventories.
DepTree random_projective_tree(SyntheticRng& rng, int n);

struct RandomConstOptions {
  int max_children = 5;
  int max_unary = 3;  // longest unary chain, counting the node itself
  std::vector<std::string> labels = {"S", "NP", "VP", "PP", "ADJP", "SBAR"};
};

/// Random k-ary tree over n words with random head children.
ConstTree random_const_tree(SyntheticRng& rng, int n, const RandomConstOptions& options = {});

/// Sentences from a small unambiguous grammar (vocabulary of about 50 words):
///   S -> NP VP, VP -> V | V NP | V NP PP, NP -> D N | D A N | PRN, PP -> P NP
/// Heads: S<-VP, VP<-V, NP<-N/PRN, PP<-P.
std::vector<ConstTree> toy_const_corpus(int count, std::uint64_t seed);
/// The same sentences as labeled dependency trees.
std::vector<DepTree> toy_dep_corpus(int count, std::uint64_t seed);

}  // namespace minparse

#endif  // MINPARSE_SYNTHETIC_HPP
