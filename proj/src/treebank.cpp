#include "minparse/treebank.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace minparse {

// ---------------------------------------------------------------------------
// DepTree

void DepTree::validate() const {
  const int n = size();
  if (static_cast<int>(heads.size()) != n || static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("dependency tree: heads/labels do not match sentence length");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (heads[i] == kRoot) {
      ++roots;
    } else if (heads[i] < 0 || heads[i] >= n || heads[i] == i) {
      throw std::invalid_argument("dependency tree: head of token " + std::to_string(i) +
                                  " out of range");
    }
  }
  if (roots != 1)
    throw std::invalid_argument("dependency tree: expected exactly one root, found " +
                                std::to_string(roots));
  for (int i = 0; i < n; ++i) {
    int cur = i;
    for (int steps = 0; cur != kRoot; ++steps) {
      if (steps > n) throw std::invalid_argument("dependency tree: cycle through token " +
                                                 std::to_string(i));
      cur = heads[cur];
    }
  }
}

bool DepTree::projective() const {
  const int n = size();
  auto dominates = [&](int h, int k) {
    for (int cur = k; cur != kRoot; cur = heads[cur])
      if (cur == h) return true;
    return false;
  };
  for (int d = 0; d < n; ++d) {
    const int h = heads[d];
    if (h == kRoot) continue;
    for (int k = std::min(h, d) + 1; k < std::max(h, d); ++k)
      if (!dominates(h, k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ConstNode

int ConstNode::head_word() const {
  const ConstNode* node = this;
  while (!node->is_leaf()) {
    if (node->head < 0) return -1;
    node = node->children[static_cast<std::size_t>(node->head)].get();
  }
  return node->leaf;
}

NodePtr make_leaf(int index) {
  auto node = std::make_shared<ConstNode>();
  node->leaf = index;
  node->begin = index;
  node->end = index + 1;
  return node;
}

NodePtr make_internal(std::string label, std::vector<NodePtr> children, int head) {
  if (children.empty()) throw std::invalid_argument("internal node '" + label + "' has no children");
  auto node = std::make_shared<ConstNode>();
  node->label = std::move(label);
  node->begin = children.front()->begin;
  node->end = children.back()->end;
  node->children = std::move(children);
  node->head = head;
  return node;
}

bool same_structure(const ConstNode& a, const ConstNode& b) {
  if (a.leaf != b.leaf || a.label != b.label || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_structure(*a.children[i], *b.children[i])) return false;
  return true;
}

bool same_heads(const ConstNode& a, const ConstNode& b) {
  if (a.head != b.head || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_heads(*a.children[i], *b.children[i])) return false;
  return true;
}

int count_internal(const ConstNode& node) {
  if (node.is_leaf()) return 0;
  int count = 1;
  for (const auto& child : node.children) count += count_internal(*child);
  return count;
}

// ---------------------------------------------------------------------------
// CoNLL

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  // Tolerate space-separated files as long as no field is empty.
  if (fields.size() == 1) {
    fields.clear();
    std::istringstream ss(line);
    for (std::string f; ss >> f;) fields.push_back(f);
  }
  return fields;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

int parse_int(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + s + "'");
  }
}

struct ConllRow {
  std::size_t line;
  Token token;
  std::string head;
  std::string label;
};

// Reads blocks of rows; `emit` receives each complete block.
template <typename Emit>
void read_conll_blocks(std::istream& in, Emit emit) {
  std::vector<ConllRow> block;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      if (!block.empty()) emit(block);
      block.clear();
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 8)
      throw ParseError(lineno, "expected at least 8 columns, found " + std::to_string(fields.size()));
    const int id = parse_int(fields[0], lineno, "token id");
    if (id != static_cast<int>(block.size()) + 1) {
      if (id >= 1 && id <= static_cast<int>(block.size()))
        throw ParseError(lineno, "duplicate token id " + fields[0]);
      throw ParseError(lineno, "token id " + fields[0] + " out of sequence");
    }
    block.push_back({lineno, Token{fields[1], fields[4]}, fields[6], fields[7]});
  }
  if (!block.empty()) emit(block);
}

}  // namespace

std::vector<DepTree> read_conll(std::istream& in) {
  std::vector<DepTree> trees;
  read_conll_blocks(in, [&](const std::vector<ConllRow>& block) {
    DepTree tree;
    const int n = static_cast<int>(block.size());
    for (const auto& row : block) {
      const int head = parse_int(row.head, row.line, "head");
      if (head < 0 || head > n)
        throw ParseError(row.line, "head index " + row.head + " out of range");
      tree.sentence.tokens.push_back(row.token);
      tree.heads.push_back(head - 1);
      tree.labels.push_back(row.label);
    }
    int roots = 0;
    for (int i = 0; i < n; ++i) {
      if (tree.heads[i] == i) throw ParseError(block[i].line, "token is its own head");
      if (tree.heads[i] == kRoot) ++roots;
    }
    // Cycle check: follow head pointers, marking tokens already known to reach ROOT.
    std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on path, 2 reaches root
    for (int i = 0; i < n; ++i) {
      std::vector<int> path;
      int cur = i;
      while (cur != kRoot && state[cur] == 0) {
        state[cur] = 1;
        path.push_back(cur);
        cur = tree.heads[cur];
      }
      if (cur != kRoot && state[cur] == 1)
        throw ParseError(block[cur].line, "cycle in head column");
      for (int p : path) state[p] = 2;
    }
    if (roots != 1)
      throw ParseError(block.front().line,
                       "expected exactly one root, found " + std::to_string(roots));
    trees.push_back(std::move(tree));
  });
  return trees;
}

std::vector<Sentence> read_conll_sentences(std::istream& in) {
  std::vector<Sentence> sentences;
  read_conll_blocks(in, [&](const std::vector<ConllRow>& block) {
    Sentence s;
    for (const auto& row : block) s.tokens.push_back(row.token);
    sentences.push_back(std::move(s));
  });
  return sentences;
}

std::vector<Sentence> read_tagged_text(std::istream& in) {
  std::vector<Sentence> sentences;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    Sentence s;
    for (std::string item; ss >> item;) {
      const auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size())
        throw ParseError(lineno, "expected form/TAG, got '" + item + "'");
      s.tokens.push_back({item.substr(0, slash), item.substr(slash + 1)});
    }
    if (!s.empty()) sentences.push_back(std::move(s));
  }
  return sentences;
}

void write_conll(std::ostream& out, const DepTree& tree) {
  for (int i = 0; i < tree.size(); ++i) {
    const auto& tok = tree.sentence[i];
    out << (i + 1) << '\t' << tok.form << "\t_\t_\t" << tok.tag << "\t_\t" << (tree.heads[i] + 1)
        << '\t' << tree.labels[i] << "\t_\t_\n";
  }
  out << '\n';
}

void write_conll(std::ostream& out, const std::vector<DepTree>& trees) {
  for (const auto& t : trees) write_conll(out, t);
}

// ---------------------------------------------------------------------------
// Brackets

namespace {

struct SExpr {
  std::string atom;            // set for bare words
  std::string label;           // set for lists
  std::vector<SExpr> items;
  bool is_atom = false;
  std::size_t line = 0;
};

class BracketLexer {
 public:
  explicit BracketLexer(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool next(std::string& tok) {
    tok.clear();
    int c;
    while ((c = in_.get()) != EOF && std::isspace(c))
      if (c == '\n') ++line_;
    if (c == EOF) return false;
    if (c == '(' || c == ')') {
      tok.push_back(static_cast<char>(c));
      return true;
    }
    tok.push_back(static_cast<char>(c));
    while ((c = in_.peek()) != EOF && !std::isspace(c) && c != '(' && c != ')')
      tok.push_back(static_cast<char>(in_.get()));
    return true;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

// Parses the list whose '(' has just been consumed.
SExpr parse_list(BracketLexer& lex) {
  SExpr expr;
  expr.line = lex.line();
  std::string tok;
  bool first = true;
  while (true) {
    if (!lex.next(tok)) throw ParseError(lex.line(), "unbalanced parentheses: missing ')'");
    if (tok == ")") break;
    if (tok == "(") {
      expr.items.push_back(parse_list(lex));
    } else if (first) {
      expr.label = tok;
    } else {
      SExpr atom;
      atom.is_atom = true;
      atom.atom = tok;
      atom.line = lex.line();
      expr.items.push_back(std::move(atom));
    }
    first = false;
  }
  if (expr.items.empty())
    throw ParseError(expr.line, expr.label.empty() ? "empty constituent"
                                                   : "constituent '" + expr.label + "' has no children");
  return expr;
}

std::string strip_function_tags(const std::string& label) {
  if (label.empty() || label[0] == '-') return label;  // -NONE-, -LRB-
  const auto cut = label.find_first_of("-=");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

// Converts an s-expression into a node, appending tokens; returns null for
// subtrees consisting only of empty elements.
NodePtr convert(const SExpr& expr, Sentence& sentence) {
  if (expr.is_atom) throw ParseError(expr.line, "word '" + expr.atom + "' outside a preterminal");
  if (expr.items.size() == 1 && expr.items[0].is_atom) {
    if (expr.label.empty()) throw ParseError(expr.line, "preterminal without a tag");
    if (expr.label == "-NONE-") return nullptr;
    const int index = sentence.size();
    sentence.tokens.push_back({expr.items[0].atom, expr.label});
    return make_leaf(index);
  }
  std::vector<NodePtr> children;
  for (const auto& item : expr.items) {
    if (item.is_atom)
      throw ParseError(item.line, "word '" + item.atom + "' mixed with constituents");
    if (auto child = convert(item, sentence)) children.push_back(std::move(child));
  }
  if (children.empty()) return nullptr;
  if (expr.label.empty()) {
    if (children.size() == 1) return children.front();
    throw ParseError(expr.line, "unlabeled constituent with several children");
  }
  return make_internal(strip_function_tags(expr.label), std::move(children));
}

void write_node(std::ostream& out, const ConstNode& node, const Sentence& sentence) {
  if (node.is_leaf()) {
    const auto& tok = sentence[node.leaf];
    out << '(' << tok.tag << ' ' << tok.form << ')';
    return;
  }
  out << '(' << node.label;
  for (const auto& child : node.children) {
    out << ' ';
    write_node(out, *child, sentence);
  }
  out << ')';
}

}  // namespace

std::vector<ConstTree> read_brackets(std::istream& in) {
  std::vector<ConstTree> trees;
  BracketLexer lex(in);
  std::string tok;
  while (lex.next(tok)) {
    if (tok == ")") throw ParseError(lex.line(), "unbalanced parentheses: unexpected ')'");
    if (tok != "(") throw ParseError(lex.line(), "expected '(' but found '" + tok + "'");
    const SExpr expr = parse_list(lex);
    ConstTree tree;
    tree.root = convert(expr, tree.sentence);
    if (!tree.root) throw ParseError(expr.line, "tree has no words");
    if (tree.root->is_leaf()) {
      // A bare "(TAG word)" tree has no constituent to parse.
      throw ParseError(expr.line, "tree has no constituents above the preterminal level");
    }
    trees.push_back(std::move(tree));
  }
  return trees;
}

void write_brackets(std::ostream& out, const ConstTree& tree) {
  write_node(out, *tree.root, tree.sentence);
  out << '\n';
}

void write_brackets(std::ostream& out, const std::vector<ConstTree>& trees) {
  for (const auto& t : trees) write_brackets(out, t);
}

std::string to_brackets(const ConstTree& tree) {
  std::ostringstream ss;
  write_node(ss, *tree.root, tree.sentence);
  return ss.str();
}

}  // namespace minparse
