#include "minparse/features.hpp"

namespace minparse {

DepFeatures extract_dep(const DepState& state) {
  DepFeatures f;
  f.positions[0] = state.stack_from_top(1);
  f.positions[1] = state.stack_from_top(0);
  f.positions[2] = state.queue() < state.n() ? state.queue() : kNoPosition;
  return f;
}

namespace {

std::string_view internal_label(const ConstNode& node) {
  return node.is_leaf() ? std::string_view{} : std::string_view{node.label};
}

// Writes left, right, root, head label slots for one stack tree.
void tree_labels(const ConstNode& node, std::string_view* out) {
  if (node.is_leaf()) return;
  const int k = static_cast<int>(node.children.size());
  if (node.head > 0) out[0] = internal_label(*node.children.front());
  if (node.head < k - 1) out[1] = internal_label(*node.children.back());
  out[2] = node.label;
  out[3] = internal_label(*node.children[static_cast<std::size_t>(node.head)]);
}

}  // namespace

ConstFeatures extract_const(const ConstState& state) {
  ConstFeatures f;
  const ConstNode* s0 = state.stack_from_top(0);
  const ConstNode* s1 = state.stack_from_top(1);
  if (s1) {
    f.positions[ConstFeatures::kS1] = s1->head_word();
    f.positions[ConstFeatures::kS1Left] = s1->begin;
    tree_labels(*s1, &f.labels[ConstFeatures::kS1LeftLabel]);
  }
  if (s0) {
    f.positions[ConstFeatures::kS0] = s0->head_word();
    f.positions[ConstFeatures::kS0Left] = s0->begin;
    tree_labels(*s0, &f.labels[ConstFeatures::kS0LeftLabel]);
  }
  if (state.queue() < state.n()) f.positions[ConstFeatures::kQ0] = state.queue();
  return f;
}

}  // namespace minparse
