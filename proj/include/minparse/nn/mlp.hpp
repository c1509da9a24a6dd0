#ifndef MINPARSE_NN_MLP_HPP
#define MINPARSE_NN_MLP_HPP

#include <string>

#include "minparse/nn/param_store.hpp"

namespace minparse::nn {

/// affine -> max(0, .) -> affine, applied row-wise to a batch of inputs.
template <typename T>
class ReluMlp {
 public:
  struct Cache {
    Tensor<T> input;
    Tensor<T> hidden;  // post-ReLU
  };

  ReluMlp(ParamStore<T>& store, const std::string& name, Index input_size, Index hidden_size,
          Index output_size);

  void init(Rng& rng);

  Index input_size() const { return w1_.value.cols(); }
  Index hidden_size() const { return w1_.value.rows(); }
  Index output_size() const { return w2_.value.rows(); }

  /// `x` is m x input_size; returns m x output_size scores.
  Tensor<T> forward(const Tensor<T>& x, Cache* cache) const;
  Tensor<T> backward(const Cache& cache, const Tensor<T>& d_scores);

  Param<T>& hidden_weights() { return w1_; }
  Param<T>& hidden_bias() { return b1_; }
  Param<T>& output_weights() { return w2_; }
  Param<T>& output_bias() { return b2_; }

 private:
  Param<T>& w1_;
  Param<T>& b1_;
  Param<T>& w2_;
  Param<T>& b2_;
};

}  // namespace minparse::nn

#endif  // MINPARSE_NN_MLP_HPP
