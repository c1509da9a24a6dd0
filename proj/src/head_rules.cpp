#include "minparse/head_rules.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace minparse {

namespace {

std::optional<int> apply_rule(const HeadRules::Rule& rule, const std::vector<std::string>& labels) {
  const int k = static_cast<int>(labels.size());
  const bool ltr = rule.direction == HeadRules::Direction::kLeftToRight;
  if (rule.priority.empty()) return ltr ? 0 : k - 1;
  for (const auto& wanted : rule.priority) {
    for (int step = 0; step < k; ++step) {
      const int i = ltr ? step : k - 1 - step;
      if (labels[i] == wanted) return i;
    }
  }
  return std::nullopt;
}

NodePtr annotate(const NodePtr& node, const Sentence& sentence, const HeadRules& rules) {
  if (node->is_leaf()) return node;
  std::vector<NodePtr> children;
  std::vector<std::string> labels;
  children.reserve(node->children.size());
  for (const auto& child : node->children) {
    children.push_back(annotate(child, sentence, rules));
    labels.push_back(child->is_leaf() ? sentence[child->leaf].tag : child->label);
  }
  const int head = rules.find_head(node->label, labels);
  return make_internal(node->label, std::move(children), head);
}

}  // namespace

HeadRules HeadRules::parse(std::istream& in) {
  HeadRules rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string label, dir;
    if (!(ss >> label)) continue;
    if (!(ss >> dir)) throw ParseError(lineno, "head rule for '" + label + "' has no direction");
    Rule rule;
    if (dir == "left") {
      rule.direction = Direction::kLeftToRight;
    } else if (dir == "right") {
      rule.direction = Direction::kRightToLeft;
    } else {
      throw ParseError(lineno, "unknown head rule direction '" + dir + "'");
    }
    for (std::string child; ss >> child;) rule.priority.push_back(child);
    if (label == "*") {
      rules.set_default(std::move(rule));
    } else {
      rules.add(label, std::move(rule));
    }
  }
  return rules;
}

HeadRules HeadRules::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open head rules '" + path + "'");
  return parse(in);
}

void HeadRules::add(const std::string& label, Rule rule) { rules_[label].push_back(std::move(rule)); }

int HeadRules::find_head(const std::string& label, const std::vector<std::string>& child_labels) const {
  if (child_labels.size() <= 1) return 0;
  if (const auto it = rules_.find(label); it != rules_.end()) {
    for (const auto& rule : it->second)
      if (const auto head = apply_rule(rule, child_labels)) return *head;
  }
  if (const auto head = apply_rule(default_, child_labels)) return *head;
  // A default rule with priority labels that all miss still has to answer.
  return default_.direction == Direction::kLeftToRight ? 0
                                                       : static_cast<int>(child_labels.size()) - 1;
}

ConstTree assign_heads(const ConstTree& tree, const HeadRules& rules) {
  return ConstTree{tree.sentence, annotate(tree.root, tree.sentence, rules)};
}

}  // namespace minparse
