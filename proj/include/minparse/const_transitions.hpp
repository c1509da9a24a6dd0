#ifndef MINPARSE_CONST_TRANSITIONS_HPP
#define MINPARSE_CONST_TRANSITIONS_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "minparse/dep_transitions.hpp"
#include "minparse/treebank.hpp"

namespace minparse {

/// Shift | Promote(X) | AdjLeft | AdjRight: 3 + X actions in total.
struct ConstAction {
  enum class Kind { kShift = 0, kPromote = 1, kAdjLeft = 2, kAdjRight = 3 };

  Kind kind = Kind::kShift;
  std::string label;  // Promote only

  static ConstAction shift() { return {Kind::kShift, {}}; }
  static ConstAction promote(std::string x) { return {Kind::kPromote, std::move(x)}; }
  static ConstAction adjoin_left() { return {Kind::kAdjLeft, {}}; }
  static ConstAction adjoin_right() { return {Kind::kAdjRight, {}}; }

  bool operator==(const ConstAction&) const = default;
};

inline constexpr int kConstKinds = 4;
inline constexpr int kDefaultPromoteCap = 3;

struct ConstLegal {
  bool shift = false;
  bool promote = false;
  bool adjoin_left = false;
  bool adjoin_right = false;

  bool allows(ConstAction::Kind k) const {
    switch (k) {
      case ConstAction::Kind::kShift: return shift;
      case ConstAction::Kind::kPromote: return promote;
      case ConstAction::Kind::kAdjLeft: return adjoin_left;
      case ConstAction::Kind::kAdjRight: return adjoin_right;
    }
    return false;
  }
  bool none() const { return !shift && !promote && !adjoin_left && !adjoin_right; }
  bool operator==(const ConstLegal&) const = default;
};

/// Partial tree on the stack plus the number of Promotes applied to it since
/// it was last shifted or adjoined to.
struct StackItem {
  NodePtr node;
  int promote_run = 0;
};

class ConstState {
 public:
  /// A cap of 0 disables the consecutive-promote limit.
  explicit ConstState(int n, int promote_cap = kDefaultPromoteCap);

  int n() const { return n_; }
  int queue() const { return j_; }
  int step() const { return step_; }
  int promote_cap() const { return cap_; }
  const std::vector<StackItem>& stack() const { return stack_; }
  /// Null when the stack is shallower than k+1.
  const ConstNode* stack_from_top(int k) const {
    const int size = static_cast<int>(stack_.size());
    return k < size ? stack_[static_cast<std::size_t>(size - 1 - k)].node.get() : nullptr;
  }

  /// Queue exhausted with a single item on the stack.
  bool terminal() const { return j_ == n_ && stack_.size() == 1; }
  /// Terminal and the remaining item is a constituent, not a bare word.
  bool complete() const { return terminal() && !stack_.back().node->is_leaf(); }

  /// Rule-shape legality plus the promote cap. When the queue is empty and
  /// only a bare word remains, Promote is the sole legal action.
  ConstLegal legal() const;
  ConstState apply(const ConstAction& action) const;

 private:
  int n_;
  int cap_;
  int j_ = 0;
  int step_ = 0;
  std::vector<StackItem> stack_;
};

inline ConstLegal const_legal(const ConstState& s) { return s.legal(); }
inline ConstState const_apply(const ConstState& s, const ConstAction& a) { return s.apply(a); }

/// Head-driven static oracle; throws TransitionError when a head is missing.
std::vector<ConstAction> const_oracle(const ConstTree& tree);
/// Longest run of consecutive Promotes on one stack item in `actions`.
int max_promote_run(const std::vector<ConstAction>& actions);

struct ConstReplay {
  ConstTree tree;
  DepTree dependencies;  // co-derived from head children
};

/// Replays actions and returns the tree together with the dependency tree
/// implied by its head children. Throws TransitionError when an action is
/// illegal or the final state is not complete.
ConstReplay const_replay_full(const Sentence& sentence, const std::vector<ConstAction>& actions,
                              int promote_cap = 0);
inline ConstTree const_replay(const Sentence& sentence, const std::vector<ConstAction>& actions,
                              int promote_cap = 0) {
  return const_replay_full(sentence, actions, promote_cap).tree;
}

/// Dependency tree induced by head children: every non-head child's head word
/// depends on its parent's head word. Arcs carry the parent's label.
DepTree head_dependencies(const ConstTree& tree);

std::string to_string(const ConstAction& action);
ConstAction parse_const_action(const std::string& text);
void write_const_actions(std::ostream& out, const std::vector<ConstAction>& actions);
std::vector<std::vector<ConstAction>> read_const_actions(std::istream& in);

}  // namespace minparse

#endif  // MINPARSE_CONST_TRANSITIONS_HPP
