#ifndef MINPARSE_NN_DROPOUT_HPP
#define MINPARSE_NN_DROPOUT_HPP

#include "minparse/nn/tensor.hpp"

namespace minparse::nn {

enum class Mode { kTrain, kEval };

inline void check_dropout_rate(double p) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("dropout probability must lie in [0, 1), got " + std::to_string(p));
}

/// Inverted-dropout mask: each entry is 0 with probability p, else 1/(1-p).
template <typename T>
Tensor<T> dropout_mask(Index rows, Index cols, double p, Rng& rng) {
  check_dropout_rate(p);
  Tensor<T> mask(rows, cols);
  if (p == 0.0) {
    mask.setOnes();
    return mask;
  }
  std::bernoulli_distribution keep(1.0 - p);
  const T scale = static_cast<T>(1.0 / (1.0 - p));
  for (Index i = 0; i < mask.size(); ++i) mask.data()[i] = keep(rng) ? scale : T(0);
  return mask;
}

template <typename T>
Tensor<T> dropout(const Tensor<T>& x, double p, Mode mode, Rng& rng) {
  check_dropout_rate(p);
  if (mode == Mode::kEval || p == 0.0) return x;
  return x.cwiseProduct(dropout_mask<T>(x.rows(), x.cols(), p, rng));
}

}  // namespace minparse::nn

#endif  // MINPARSE_NN_DROPOUT_HPP
