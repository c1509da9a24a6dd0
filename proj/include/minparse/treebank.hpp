#ifndef MINPARSE_TREEBANK_HPP
#define MINPARSE_TREEBANK_HPP

#include <cstddef>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace minparse {

/// Head index used for the artificial root of a dependency tree.
inline constexpr int kRoot = -1;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Token {
  std::string form;
  std::string tag;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](int i) const { return tokens[static_cast<std::size_t>(i)]; }

  bool operator==(const Sentence&) const = default;
};

/// Labeled dependency tree. heads[i] is the 0-based head of token i or kRoot.
struct DepTree {
  Sentence sentence;
  std::vector<int> heads;
  std::vector<std::string> labels;

  int size() const { return sentence.size(); }
  bool projective() const;
  /// Throws std::invalid_argument unless single-rooted, acyclic and in range.
  void validate() const;

  bool operator==(const DepTree&) const = default;
};

// ---------------------------------------------------------------------------
// Constituency trees
//
// Nodes are immutable and shared, so partial trees on a parser stack can be
// extended without copying whole subtrees. The preterminal layer is not
// represented: a leaf only carries its token index; the tag lives on Token.

struct ConstNode;
using NodePtr = std::shared_ptr<const ConstNode>;

struct ConstNode {
  std::string label;            // empty for leaves
  int leaf = -1;                // token index for leaves, -1 otherwise
  std::vector<NodePtr> children;
  int head = -1;                // head-child position, -1 when unassigned
  int begin = 0;                // word span [begin, end)
  int end = 0;

  bool is_leaf() const { return leaf >= 0; }
  /// Index of the lexical head word, following head children down to a leaf.
  /// Returns -1 if some node on the spine has no head assigned.
  int head_word() const;
};

NodePtr make_leaf(int index);
/// Builds an internal node; span is taken from the (contiguous) children.
NodePtr make_internal(std::string label, std::vector<NodePtr> children, int head = -1);

/// Structural equality: labels, child order and leaf indices.
bool same_structure(const ConstNode& a, const ConstNode& b);
/// True when every internal node of both trees has the same head child.
bool same_heads(const ConstNode& a, const ConstNode& b);
int count_internal(const ConstNode& node);

struct ConstTree {
  Sentence sentence;
  NodePtr root;

  int size() const { return sentence.size(); }
  bool operator==(const ConstTree& other) const {
    return sentence == other.sentence && root && other.root &&
           same_structure(*root, *other.root);
  }
};

// ---------------------------------------------------------------------------
// Readers and writers

/// CoNLL-X style blocks. Only ID, FORM, POSTAG, HEAD and DEPREL are consumed.
std::vector<DepTree> read_conll(std::istream& in);
/// Like read_conll, but HEAD/DEPREL may be blank; only tokens are returned.
std::vector<Sentence> read_conll_sentences(std::istream& in);
/// One sentence per line, tokens written as form/TAG (split at the last '/').
std::vector<Sentence> read_tagged_text(std::istream& in);
void write_conll(std::ostream& out, const DepTree& tree);
void write_conll(std::ostream& out, const std::vector<DepTree>& trees);

/// PTB-style s-expressions, one per line or pretty-printed.
///
/// Preterminals "(TAG word)" are folded into leaves. Function tags and
/// coindexation suffixes are stripped from nonterminals ("NP-SBJ-1" -> "NP"),
/// -NONE- empty elements are dropped along with constituents they leave
/// empty, and an unlabeled outer wrapper "( (S ...) )" is removed.
std::vector<ConstTree> read_brackets(std::istream& in);
void write_brackets(std::ostream& out, const ConstTree& tree);
void write_brackets(std::ostream& out, const std::vector<ConstTree>& trees);
std::string to_brackets(const ConstTree& tree);

}  // namespace minparse

#endif  // MINPARSE_TREEBANK_HPP
