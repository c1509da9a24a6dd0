#ifndef MINPARSE_NN_LSTM_HPP
#define MINPARSE_NN_LSTM_HPP

#include <string>
#include <utility>

#include "minparse/nn/param_store.hpp"

namespace minparse::nn {

/// Standard LSTM without peepholes:
///   i, f, o = logistic(Wx x + Wh h_prev + b),  g = tanh(...)
///   c = f * c_prev + i * g,  h = o * tanh(c)
/// Gate blocks are laid out [i | f | o | g] along the 4H axis.
template <typename T>
class Lstm {
 public:
  struct Cache {
    Tensor<T> input;   // n x I
    Tensor<T> gates;   // n x 4H, post-activation
    Tensor<T> cell;    // n x H
    Tensor<T> tanh_cell;
    Tensor<T> output;  // n x H
    bool reverse = false;
  };

  Lstm(ParamStore<T>& store, const std::string& name, Index input_size, Index hidden_size);

  /// Glorot matrices, forget-gate bias 1, other biases 0.
  void init(Rng& rng);

  Index input_size() const { return input_size_; }
  Index hidden_size() const { return hidden_size_; }

  /// Runs over the rows of `x` (right to left when `reverse`). Row t of the
  /// result is the hidden state after consuming x_t.
  Tensor<T> forward(const Tensor<T>& x, bool reverse, Cache* cache) const;
  /// Exact BPTT: accumulates parameter gradients and returns dL/dx.
  Tensor<T> backward(const Cache& cache, const Tensor<T>& d_output);

  /// Single step; returns (h_t, c_t).
  std::pair<RowVector<T>, RowVector<T>> step(const RowVector<T>& x, const RowVector<T>& h_prev,
                                             const RowVector<T>& c_prev) const;

  Param<T>& input_weights() { return wx_; }
  Param<T>& recurrent_weights() { return wh_; }
  Param<T>& bias() { return b_; }

 private:
  Index input_size_;
  Index hidden_size_;
  Param<T>& wx_;  // 4H x I
  Param<T>& wh_;  // 4H x H
  Param<T>& b_;   // 1 x 4H
};

}  // namespace minparse::nn

#endif  // MINPARSE_NN_LSTM_HPP
