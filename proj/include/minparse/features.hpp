#ifndef MINPARSE_FEATURES_HPP
#define MINPARSE_FEATURES_HPP

#include <array>
#include <string_view>

#include "minparse/const_transitions.hpp"
#include "minparse/dep_transitions.hpp"

namespace minparse {

/// Missing position (empty stack slot or exhausted queue).
inline constexpr int kNoPosition = -1;

enum class SlotFamily { kStack, kQueue };

/// Positions s1, s0, q0.
struct DepFeatures {
  static constexpr int kSlots = 3;
  static constexpr std::array<SlotFamily, kSlots> kFamilies = {SlotFamily::kStack, SlotFamily::kStack,
                                                               SlotFamily::kQueue};
  std::array<int, kSlots> positions{kNoPosition, kNoPosition, kNoPosition};

  bool operator==(const DepFeatures&) const = default;
};

DepFeatures extract_dep(const DepState& state);

/// Positions s1, s0, q0, s1.left, s0.left and the label slots
/// s0.{left, right, root, head}, s1.{left, right, root, head}.
/// An empty label view stands for NONE; views point into the state's trees.
struct ConstFeatures {
  static constexpr int kPositions = 5;
  static constexpr int kLabels = 8;
  static constexpr std::array<SlotFamily, kPositions> kFamilies = {
      SlotFamily::kStack, SlotFamily::kStack, SlotFamily::kQueue, SlotFamily::kStack,
      SlotFamily::kStack};

  enum Position { kS1 = 0, kS0 = 1, kQ0 = 2, kS1Left = 3, kS0Left = 4 };
  enum Label {
    kS0LeftLabel = 0, kS0RightLabel, kS0Root, kS0Head,
    kS1LeftLabel, kS1RightLabel, kS1Root, kS1Head
  };

  std::array<int, kPositions> positions{kNoPosition, kNoPosition, kNoPosition, kNoPosition,
                                        kNoPosition};
  std::array<std::string_view, kLabels> labels{};
};

ConstFeatures extract_const(const ConstState& state);

}  // namespace minparse

#endif  // MINPARSE_FEATURES_HPP
