#ifndef MINPARSE_HEAD_RULES_HPP
#define MINPARSE_HEAD_RULES_HPP

#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

#include "minparse/treebank.hpp"

namespace minparse {

/// Head-percolation table.
///
/// Text format, one rule per line: `LABEL direction child1 child2 ...` where
/// direction is `left` (scan children left to right) or `right`. Several
/// lines for the same label are tried in file order. For each rule the
/// priority labels are tried in order and the first child (in scan order)
/// carrying that label wins; a rule with no priority labels picks the first
/// child in scan order. The label `*` sets the default rule used when nothing
/// else matches. Leaf children are matched by their POS tag. `#` starts a
/// comment.
class HeadRules {
 public:
  enum class Direction { kLeftToRight, kRightToLeft };

  struct Rule {
    Direction direction = Direction::kLeftToRight;
    std::vector<std::string> priority;
  };

  HeadRules() = default;

  static HeadRules parse(std::istream& in);
  static HeadRules load(const std::string& path);

  void add(const std::string& label, Rule rule);
  void set_default(Rule rule) { default_ = std::move(rule); }

  /// Head-child position for a node with the given label and child labels.
  int find_head(const std::string& label, const std::vector<std::string>& child_labels) const;

 private:
  std::unordered_map<std::string, std::vector<Rule>> rules_;
  Rule default_;
};

/// Returns a copy of `tree` with every internal node's head child set.
ConstTree assign_heads(const ConstTree& tree, const HeadRules& rules);

}  // namespace minparse

#endif  // MINPARSE_HEAD_RULES_HPP
