#ifndef MINPARSE_NN_LOSS_HPP
#define MINPARSE_NN_LOSS_HPP

#include "minparse/nn/tensor.hpp"

namespace minparse::nn {

/// -log softmax(scores)[gold]; writes softmax(scores) - onehot(gold) to `grad`
/// when given. Max-subtracted for stability.
template <typename T, typename Derived>
T nll_softmax(const Eigen::MatrixBase<Derived>& scores, Index gold, RowVector<T>* grad = nullptr) {
  if (gold < 0 || gold >= scores.size()) throw std::out_of_range("gold index outside score vector");
  const T max = scores.maxCoeff();
  RowVector<T> e = (scores.array() - max).exp().matrix();
  const T z = e.sum();
  const T loss = std::log(z) - (scores(gold) - max);
  if (grad) {
    *grad = e / z;
    (*grad)(gold) -= T(1);
  }
  return loss;
}

template <typename T, typename Derived>
RowVector<T> softmax(const Eigen::MatrixBase<Derived>& scores) {
  RowVector<T> e = (scores.array() - scores.maxCoeff()).exp().matrix();
  return e / e.sum();
}

}  // namespace minparse::nn

#endif  // MINPARSE_NN_LOSS_HPP
