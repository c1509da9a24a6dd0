#include "minparse/synthetic.hpp"

#include <array>

#include "minparse/const_transitions.hpp"

namespace minparse {

namespace {

int uniform_int(SyntheticRng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename Seq>
const auto& pick(SyntheticRng& rng, const Seq& items) {
  return items[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(std::size(items)) - 1))];
}

const std::array<const char*, 6> kDepLabels = {"nsubj", "obj", "det", "amod", "prep", "pobj"};
const std::array<const char*, 5> kTags = {"NN", "VB", "DT", "JJ", "IN"};

void attach_span(SyntheticRng& rng, DepTree& tree, int begin, int end, int head) {
  if (begin >= end) return;
  const int root = uniform_int(rng, begin, end - 1);
  tree.heads[static_cast<std::size_t>(root)] = head;
  tree.labels[static_cast<std::size_t>(root)] = head == kRoot ? "root" : pick(rng, kDepLabels);
  attach_span(rng, tree, begin, root, root);
  attach_span(rng, tree, root + 1, end, root);
}

Sentence random_sentence(SyntheticRng& rng, int n) {
  Sentence s;
  for (int i = 0; i < n; ++i)
    s.tokens.push_back({"w" + std::to_string(uniform_int(rng, 0, 49)), pick(rng, kTags)});
  return s;
}

NodePtr build_const(SyntheticRng& rng, int begin, int end, const RandomConstOptions& o, bool top) {
  NodePtr node;
  if (end - begin == 1 && !top && uniform_int(rng, 0, 1) == 0) return make_leaf(begin);
  if (end - begin == 1) {
    node = make_internal(pick(rng, o.labels), {make_leaf(begin)}, 0);
  } else {
    const int width = end - begin;
    const int k = uniform_int(rng, 2, std::min(o.max_children, width));
    // k - 1 distinct cut points inside the span
    std::vector<int> cuts;
    for (int c = begin + 1; c < end; ++c) cuts.push_back(c);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(k - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), begin);
    cuts.push_back(end);
    std::vector<NodePtr> children;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      children.push_back(build_const(rng, cuts[i], cuts[i + 1], o, false));
    node = make_internal(pick(rng, o.labels), std::move(children), uniform_int(rng, 0, k - 1));
  }
  const int extra = uniform_int(rng, 0, std::max(0, o.max_unary - 1));
  for (int u = 0; u < extra; ++u) node = make_internal(pick(rng, o.labels), {node}, 0);
  return node;
}

// ---------------------------------------------------------------------------
// toy grammar

const std::array<const char*, 16> kNouns = {"dog", "cat", "bird", "child", "teacher", "farmer", "river",
                                            "house", "book", "garden", "city", "window", "apple",
                                            "letter", "song", "road"};
const std::array<const char*, 8> kAdjectives = {"old", "small", "red", "quiet", "happy", "green",
                                                "tall", "strange"};
const std::array<const char*, 12> kVerbs = {"sees", "likes", "finds", "paints", "reads", "sings",
                                            "builds", "follows", "opens", "writes", "carries", "sleeps"};
const std::array<const char*, 5> kDeterminers = {"the", "a", "every", "some", "this"};
const std::array<const char*, 5> kPrepositions = {"near", "with", "under", "behind", "into"};
const std::array<const char*, 4> kPronouns = {"he", "she", "they", "it"};

struct ToyBuilder {
  SyntheticRng& rng;
  Sentence sentence;

  NodePtr word(const char* form, const char* tag) {
    sentence.tokens.push_back({form, tag});
    return make_leaf(sentence.size() - 1);
  }

  NodePtr noun_phrase() {
    const int shape = uniform_int(rng, 0, 3);
    if (shape == 0) return make_internal("NP", {word(pick(rng, kPronouns), "PRP")}, 0);
    std::vector<NodePtr> children = {word(pick(rng, kDeterminers), "DT")};
    if (shape == 1) children.push_back(word(pick(rng, kAdjectives), "JJ"));
    children.push_back(word(pick(rng, kNouns), "NN"));
    const int head = static_cast<int>(children.size()) - 1;
    return make_internal("NP", std::move(children), head);
  }

  NodePtr sentence_node() {
    NodePtr subject = noun_phrase();
    std::vector<NodePtr> vp = {word(pick(rng, kVerbs), "VBZ")};
    const int shape = uniform_int(rng, 0, 2);
    if (shape >= 1) vp.push_back(noun_phrase());
    if (shape == 2) {
      NodePtr prep = word(pick(rng, kPrepositions), "IN");
      vp.push_back(make_internal("PP", {prep, noun_phrase()}, 0));
    }
    NodePtr verb_phrase = make_internal("VP", std::move(vp), 0);
    return make_internal("S", {subject, verb_phrase}, 1);
  }
};

std::string toy_label(const DepTree& tree, int dependent) {
  const auto& tag = tree.sentence[dependent].tag;
  const int head = tree.heads[static_cast<std::size_t>(dependent)];
  if (head == kRoot) return "root";
  const auto& head_tag = tree.sentence[head].tag;
  if (tag == "DT") return "det";
  if (tag == "JJ") return "amod";
  if (tag == "IN") return "prep";
  if (head_tag == "IN") return "pobj";
  return dependent < head ? "nsubj" : "obj";
}

}  // namespace

DepTree random_projective_tree(SyntheticRng& rng, int n) {
  DepTree tree;
  tree.sentence = random_sentence(rng, n);
  tree.heads.assign(static_cast<std::size_t>(n), kRoot);
  tree.labels.assign(static_cast<std::size_t>(n), "root");
  attach_span(rng, tree, 0, n, kRoot);
  return tree;
}

ConstTree random_const_tree(SyntheticRng& rng, int n, const RandomConstOptions& options) {
  ConstTree tree;
  tree.sentence = random_sentence(rng, n);
  tree.root = build_const(rng, 0, n, options, true);
  return tree;
}

std::vector<ConstTree> toy_const_corpus(int count, std::uint64_t seed) {
  SyntheticRng rng(seed);
  std::vector<ConstTree> out;
  for (int i = 0; i < count; ++i) {
    ToyBuilder b{rng, {}};
    NodePtr root = b.sentence_node();
    out.push_back({std::move(b.sentence), std::move(root)});
  }
  return out;
}

std::vector<DepTree> toy_dep_corpus(int count, std::uint64_t seed) {
  std::vector<DepTree> out;
  for (const auto& tree : toy_const_corpus(count, seed)) {
    DepTree dep = head_dependencies(tree);
    for (int i = 0; i < dep.sentence.size(); ++i) dep.labels[static_cast<std::size_t>(i)] = toy_label(dep, i);
    out.push_back(std::move(dep));
  }
  return out;
}

}  // namespace minparse
