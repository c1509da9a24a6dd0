#ifndef MINPARSE_DEP_TRANSITIONS_HPP
#define MINPARSE_DEP_TRANSITIONS_HPP

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minparse/treebank.hpp"

namespace minparse {

class TransitionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Arc-standard actions. Labels ride on the reduces.
struct DepAction {
  enum class Kind { kShift = 0, kReduceLeft = 1, kReduceRight = 2 };

  Kind kind = Kind::kShift;
  std::string label;

  static DepAction shift() { return {Kind::kShift, {}}; }
  static DepAction left(std::string l) { return {Kind::kReduceLeft, std::move(l)}; }
  static DepAction right(std::string l) { return {Kind::kReduceRight, std::move(l)}; }

  bool operator==(const DepAction&) const = default;
};

inline constexpr int kDepKinds = 3;

/// Bitset over DepAction::Kind.
struct DepLegal {
  bool shift = false;
  bool left = false;
  bool right = false;

  bool allows(DepAction::Kind k) const {
    switch (k) {
      case DepAction::Kind::kShift: return shift;
      case DepAction::Kind::kReduceLeft: return left;
      case DepAction::Kind::kReduceRight: return right;
    }
    return false;
  }
  bool none() const { return !shift && !left && !right; }
  bool operator==(const DepLegal&) const = default;
};

struct DepArc {
  int head;
  int dependent;
  std::string label;

  bool operator==(const DepArc&) const = default;
};

/// Configuration <step, j, S>: A.
class DepState {
 public:
  explicit DepState(int n);

  int n() const { return n_; }
  int queue() const { return j_; }
  int step() const { return step_; }
  const std::vector<int>& stack() const { return stack_; }
  const std::vector<DepArc>& arcs() const { return arcs_; }

  /// s0 is stack_from_top(0); returns -1 if absent.
  int stack_from_top(int k) const {
    const int size = static_cast<int>(stack_.size());
    return k < size ? stack_[static_cast<std::size_t>(size - 1 - k)] : -1;
  }

  bool terminal() const { return j_ == n_ && stack_.size() == 1; }
  DepLegal legal() const;
  /// Returns the successor state; throws TransitionError if illegal.
  DepState apply(const DepAction& action) const;

 private:
  int n_;
  int j_ = 0;
  int step_ = 0;
  std::vector<int> stack_;
  std::vector<DepArc> arcs_;
};

inline DepState dep_initial(int n) { return DepState(n); }
inline DepLegal dep_legal(const DepState& s) { return s.legal(); }
inline DepState dep_apply(const DepState& s, const DepAction& a) { return s.apply(a); }

/// Static arc-standard oracle; throws TransitionError for non-projective trees.
std::vector<DepAction> dep_oracle(const DepTree& tree);

/// Replays `actions` from the initial state; the last stack item is attached
/// to ROOT with `root_label`.
DepTree dep_replay(const Sentence& sentence, const std::vector<DepAction>& actions,
                   const std::string& root_label = "root");

/// Builds a tree from a terminal state.
DepTree dep_tree_from_state(const Sentence& sentence, const DepState& state,
                            const std::string& root_label);

std::string to_string(const DepAction& action);
DepAction parse_dep_action(const std::string& text);
/// One action per line, blank line after each sentence.
void write_dep_actions(std::ostream& out, const std::vector<DepAction>& actions);
std::vector<std::vector<DepAction>> read_dep_actions(std::istream& in);

}  // namespace minparse

#endif  // MINPARSE_DEP_TRANSITIONS_HPP
