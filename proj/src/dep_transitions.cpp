#include "minparse/dep_transitions.hpp"

namespace minparse {

DepState::DepState(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("sentence length must be positive");
  stack_.reserve(static_cast<std::size_t>(n));
}

DepLegal DepState::legal() const {
  DepLegal legal;
  legal.shift = j_ < n_;
  legal.left = legal.right = stack_.size() >= 2;
  return legal;
}

DepState DepState::apply(const DepAction& action) const {
  DepState next = *this;
  switch (action.kind) {
    case DepAction::Kind::kShift:
      if (j_ >= n_) throw TransitionError("shift requires a non-empty queue (j < n)");
      next.stack_.push_back(j_);
      ++next.j_;
      break;
    case DepAction::Kind::kReduceLeft: {
      if (stack_.size() < 2) throw TransitionError("reduce-left requires two stack items");
      const int s0 = next.stack_.back();
      next.stack_.pop_back();
      const int s1 = next.stack_.back();
      next.stack_.back() = s0;
      next.arcs_.push_back({s0, s1, action.label});
      break;
    }
    case DepAction::Kind::kReduceRight: {
      if (stack_.size() < 2) throw TransitionError("reduce-right requires two stack items");
      const int s0 = next.stack_.back();
      next.stack_.pop_back();
      next.arcs_.push_back({next.stack_.back(), s0, action.label});
      break;
    }
  }
  ++next.step_;
  return next;
}

std::vector<DepAction> dep_oracle(const DepTree& tree) {
  const int n = tree.size();
  if (!tree.projective()) throw TransitionError("tree is not projective: not derivable");
  std::vector<int> missing(static_cast<std::size_t>(n), 0);  // gold children not yet attached
  for (int d = 0; d < n; ++d)
    if (tree.heads[d] != kRoot) ++missing[tree.heads[d]];

  std::vector<DepAction> actions;
  actions.reserve(static_cast<std::size_t>(2 * n - 1));
  DepState state(n);
  while (!state.terminal()) {
    const int s0 = state.stack_from_top(0);
    const int s1 = state.stack_from_top(1);
    DepAction action = DepAction::shift();
    if (s1 >= 0 && tree.heads[s1] == s0 && missing[s1] == 0) {
      action = DepAction::left(tree.labels[s1]);
      --missing[s0];
    } else if (s1 >= 0 && tree.heads[s0] == s1 && missing[s0] == 0) {
      action = DepAction::right(tree.labels[s0]);
      --missing[s1];
    } else if (state.queue() == n) {
      throw TransitionError("tree is not derivable by arc-standard");
    }
    state = state.apply(action);
    actions.push_back(std::move(action));
  }
  return actions;
}

DepTree dep_tree_from_state(const Sentence& sentence, const DepState& state,
                            const std::string& root_label) {
  if (!state.terminal()) throw TransitionError("non-terminal final state");
  DepTree tree;
  tree.sentence = sentence;
  tree.heads.assign(static_cast<std::size_t>(state.n()), kRoot);
  tree.labels.assign(static_cast<std::size_t>(state.n()), root_label);
  for (const auto& arc : state.arcs()) {
    tree.heads[arc.dependent] = arc.head;
    tree.labels[arc.dependent] = arc.label;
  }
  return tree;
}

DepTree dep_replay(const Sentence& sentence, const std::vector<DepAction>& actions,
                   const std::string& root_label) {
  DepState state(sentence.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    try {
      state = state.apply(actions[i]);
    } catch (const TransitionError& e) {
      throw TransitionError("action " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return dep_tree_from_state(sentence, state, root_label);
}

std::string to_string(const DepAction& action) {
  switch (action.kind) {
    case DepAction::Kind::kShift: return "SHIFT";
    case DepAction::Kind::kReduceLeft: return "LEFT:" + action.label;
    case DepAction::Kind::kReduceRight: return "RIGHT:" + action.label;
  }
  return {};
}

DepAction parse_dep_action(const std::string& text) {
  if (text == "SHIFT") return DepAction::shift();
  if (text.rfind("LEFT:", 0) == 0 && text.size() > 5) return DepAction::left(text.substr(5));
  if (text.rfind("RIGHT:", 0) == 0 && text.size() > 6) return DepAction::right(text.substr(6));
  throw std::invalid_argument("unknown dependency action '" + text + "'");
}

void write_dep_actions(std::ostream& out, const std::vector<DepAction>& actions) {
  for (const auto& a : actions) out << to_string(a) << '\n';
  out << '\n';
}

std::vector<std::vector<DepAction>> read_dep_actions(std::istream& in) {
  std::vector<std::vector<DepAction>> all;
  std::vector<DepAction> cur;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) {
      if (!cur.empty()) all.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(parse_dep_action(line));
    }
  }
  if (!cur.empty()) all.push_back(std::move(cur));
  return all;
}

}  // namespace minparse
