#include "minparse/const_transitions.hpp"

#include <algorithm>

namespace minparse {

ConstState::ConstState(int n, int promote_cap) : n_(n), cap_(promote_cap) {
  if (n < 1) throw std::invalid_argument("sentence length must be positive");
  if (promote_cap < 0) throw std::invalid_argument("promote cap must be non-negative");
}

ConstLegal ConstState::legal() const {
  ConstLegal legal;
  const std::size_t size = stack_.size();
  legal.shift = j_ < n_;
  legal.promote = size >= 1 && (cap_ == 0 || stack_.back().promote_run < cap_);
  if (size >= 2) {
    legal.adjoin_left = !stack_[size - 1].node->is_leaf();
    legal.adjoin_right = !stack_[size - 2].node->is_leaf();
  }
  return legal;
}

ConstState ConstState::apply(const ConstAction& action) const {
  ConstState next = *this;
  auto& stack = next.stack_;
  switch (action.kind) {
    case ConstAction::Kind::kShift:
      if (j_ >= n_) throw TransitionError("shift requires a non-empty queue (j < n)");
      stack.push_back({make_leaf(j_), 0});
      ++next.j_;
      break;
    case ConstAction::Kind::kPromote: {
      if (stack.empty()) throw TransitionError("promote requires a stack item");
      if (action.label.empty()) throw TransitionError("promote requires a nonterminal label");
      if (cap_ != 0 && stack.back().promote_run >= cap_)
        throw TransitionError("promote exceeds the consecutive-promote cap of " + std::to_string(cap_));
      auto& top = stack.back();
      top.node = make_internal(action.label, {top.node}, 0);
      ++top.promote_run;
      break;
    }
    case ConstAction::Kind::kAdjLeft: {
      if (stack.size() < 2) throw TransitionError("adjoin-left requires two stack items");
      const NodePtr target = stack.back().node;
      if (target->is_leaf()) throw TransitionError("adjoin-left requires s0 to be a constituent");
      const NodePtr sister = stack[stack.size() - 2].node;
      std::vector<NodePtr> children;
      children.reserve(target->children.size() + 1);
      children.push_back(sister);
      children.insert(children.end(), target->children.begin(), target->children.end());
      stack.pop_back();
      stack.back() = {make_internal(target->label, std::move(children), target->head + 1), 0};
      break;
    }
    case ConstAction::Kind::kAdjRight: {
      if (stack.size() < 2) throw TransitionError("adjoin-right requires two stack items");
      const NodePtr target = stack[stack.size() - 2].node;
      if (target->is_leaf()) throw TransitionError("adjoin-right requires s1 to be a constituent");
      std::vector<NodePtr> children = target->children;
      children.push_back(stack.back().node);
      stack.pop_back();
      stack.back() = {make_internal(target->label, std::move(children), target->head), 0};
      break;
    }
  }
  ++next.step_;
  return next;
}

namespace {

void oracle_rec(const ConstNode& node, std::vector<ConstAction>& out) {
  if (node.is_leaf()) {
    out.push_back(ConstAction::shift());
    return;
  }
  const int k = static_cast<int>(node.children.size());
  const int h = node.head;
  if (h < 0 || h >= k) throw TransitionError("constituent '" + node.label + "' has no head child");
  for (int i = 0; i < h; ++i) oracle_rec(*node.children[i], out);
  oracle_rec(*node.children[h], out);
  out.push_back(ConstAction::promote(node.label));
  for (int i = h + 1; i < k; ++i) {
    oracle_rec(*node.children[i], out);
    out.push_back(ConstAction::adjoin_right());
  }
  for (int i = 0; i < h; ++i) out.push_back(ConstAction::adjoin_left());
}

void head_deps_rec(const ConstNode& node, DepTree& tree) {
  if (node.is_leaf()) return;
  const int head_word = node.head_word();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& child = *node.children[i];
    head_deps_rec(child, tree);
    if (static_cast<int>(i) != node.head) {
      tree.heads[child.head_word()] = head_word;
      tree.labels[child.head_word()] = node.label;
    }
  }
}

}  // namespace

std::vector<ConstAction> const_oracle(const ConstTree& tree) {
  std::vector<ConstAction> actions;
  oracle_rec(*tree.root, actions);
  return actions;
}

int max_promote_run(const std::vector<ConstAction>& actions) {
  std::vector<int> runs;
  int best = 0;
  for (const auto& a : actions) {
    switch (a.kind) {
      case ConstAction::Kind::kShift: runs.push_back(0); break;
      case ConstAction::Kind::kPromote:
        if (runs.empty()) return best;
        best = std::max(best, ++runs.back());
        break;
      case ConstAction::Kind::kAdjLeft:
      case ConstAction::Kind::kAdjRight:
        if (runs.size() < 2) return best;
        runs.pop_back();
        runs.back() = 0;
        break;
    }
  }
  return best;
}

DepTree head_dependencies(const ConstTree& tree) {
  DepTree deps;
  deps.sentence = tree.sentence;
  deps.heads.assign(static_cast<std::size_t>(tree.size()), kRoot);
  deps.labels.assign(static_cast<std::size_t>(tree.size()), "root");
  head_deps_rec(*tree.root, deps);
  return deps;
}

ConstReplay const_replay_full(const Sentence& sentence, const std::vector<ConstAction>& actions,
                              int promote_cap) {
  ConstState state(sentence.size(), promote_cap);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    try {
      state = state.apply(actions[i]);
    } catch (const TransitionError& e) {
      throw TransitionError("action " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!state.terminal()) throw TransitionError("non-terminal final state");
  if (!state.complete()) throw TransitionError("final item is a bare leaf");
  ConstReplay out;
  out.tree = ConstTree{sentence, state.stack().back().node};
  out.dependencies = head_dependencies(out.tree);
  return out;
}

std::string to_string(const ConstAction& action) {
  switch (action.kind) {
    case ConstAction::Kind::kShift: return "SHIFT";
    case ConstAction::Kind::kPromote: return "PRO:" + action.label;
    case ConstAction::Kind::kAdjLeft: return "ADJ-L";
    case ConstAction::Kind::kAdjRight: return "ADJ-R";
  }
  return {};
}

ConstAction parse_const_action(const std::string& text) {
  if (text == "SHIFT") return ConstAction::shift();
  if (text == "ADJ-L") return ConstAction::adjoin_left();
  if (text == "ADJ-R") return ConstAction::adjoin_right();
  if (text.rfind("PRO:", 0) == 0 && text.size() > 4) return ConstAction::promote(text.substr(4));
  throw std::invalid_argument("unknown constituency action '" + text + "'");
}

void write_const_actions(std::ostream& out, const std::vector<ConstAction>& actions) {
  for (const auto& a : actions) out << to_string(a) << '\n';
  out << '\n';
}

std::vector<std::vector<ConstAction>> read_const_actions(std::istream& in) {
  std::vector<std::vector<ConstAction>> all;
  std::vector<ConstAction> cur;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) {
      if (!cur.empty()) all.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(parse_const_action(line));
    }
  }
  if (!cur.empty()) all.push_back(std::move(cur));
  return all;
}

}  // namespace minparse
