#ifndef MINPARSE_NN_GRAD_CHECK_HPP
#define MINPARSE_NN_GRAD_CHECK_HPP

#include <functional>
#include <string>
#include <vector>

#include "minparse/nn/param_store.hpp"

namespace minparse::nn {

struct GradCheckOptions {
  double step = 1e-5;          // central-difference half width
  double tolerance = 1e-6;     // on relative error
  /// Relative error is |a - n| / max(|a|, |n|, floor); the floor keeps
  /// coordinates whose true gradient is zero from dividing round-off by zero.
  double floor = 1e-8;
  int total_samples = 500;     // spread across tensors
  int min_per_param = 4;
  std::uint64_t seed = 7;
};

struct GradCheckEntry {
  std::string param;
  Index row = 0;
  Index col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  int checked = 0;
  double max_rel_error = 0.0;
  GradCheckEntry worst;
  std::vector<GradCheckEntry> failures;            // above tolerance
  std::vector<std::pair<std::string, double>> per_param;  // max rel. error per tensor
  bool passed() const { return failures.empty(); }
  std::string summary() const;
};

/// Compares the gradients already accumulated in `store` against central
/// differences of `loss`. Every tensor gets at least `min_per_param`
/// coordinates (or all of them, if fewer); the rest of the sample budget is
/// split in proportion to tensor size. Parameter values are restored.
template <typename T>
GradCheckReport grad_check(ParamStore<T>& store, const std::function<double()>& loss,
                           const GradCheckOptions& options = {});

}  // namespace minparse::nn

#endif  // MINPARSE_NN_GRAD_CHECK_HPP
