#ifndef MINPARSE_DIAGNOSTICS_HPP
#define MINPARSE_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "minparse/model.hpp"
#include "minparse/nn/grad_check.hpp"

namespace minparse {

struct GradCheckSetup {
  nn::GradCheckOptions options;
  int sentences = 2;
  int sentence_length = 5;
  std::uint64_t seed = 3;
  /// Test hook: corrupts the analytic gradient of this parameter.
  std::optional<std::string> corrupt_param;
};

/// Builds a tiny random parser for `task` (dropout off, 64-bit) over random
/// sentences and compares its backpropagated gradients with central
/// differences of the summed training loss.
nn::GradCheckReport check_parser_gradients(Task task, const GradCheckSetup& setup);

struct LayerCheck {
  std::string layer;
  nn::GradCheckReport report;
};

/// Gradient checks of the LSTM, the ReLU MLP with softmax loss and the
/// two-layer Bi-LSTM encoder in isolation, at precision T.
template <typename T>
std::vector<LayerCheck> check_layer_gradients(const nn::GradCheckOptions& options,
                                              const std::optional<std::string>& corrupt_param = {});

}  // namespace minparse

#endif  // MINPARSE_DIAGNOSTICS_HPP
