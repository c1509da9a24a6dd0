#include "minparse/nn/mlp.hpp"

namespace minparse::nn {

template <typename T>
ReluMlp<T>::ReluMlp(ParamStore<T>& store, const std::string& name, Index input_size,
                    Index hidden_size, Index output_size)
    : w1_(store.add(name + ".W1", hidden_size, input_size)),
      b1_(store.add(name + ".b1", 1, hidden_size)),
      w2_(store.add(name + ".W2", output_size, hidden_size)),
      b2_(store.add(name + ".b2", 1, output_size)) {}

template <typename T>
void ReluMlp<T>::init(Rng& rng) {
  init_glorot(w1_, rng);
  init_glorot(w2_, rng);
  b1_.value.setZero();
  b2_.value.setZero();
}

template <typename T>
Tensor<T> ReluMlp<T>::forward(const Tensor<T>& x, Cache* cache) const {
  check_dims(x.cols(), input_size(), "mlp input");
  Tensor<T> hidden = x * w1_.value.transpose();
  hidden.rowwise() += b1_.value.row(0);
  hidden = hidden.cwiseMax(T(0));
  Tensor<T> scores = hidden * w2_.value.transpose();
  scores.rowwise() += b2_.value.row(0);
  if (cache) {
    cache->input = x;
    cache->hidden = std::move(hidden);
  }
  return scores;
}

template <typename T>
Tensor<T> ReluMlp<T>::backward(const Cache& cache, const Tensor<T>& d_scores) {
  check_dims(d_scores.cols(), output_size(), "mlp score gradient");
  check_dims(d_scores.rows(), cache.input.rows(), "mlp score gradient");
  w2_.grad.noalias() += d_scores.transpose() * cache.hidden;
  b2_.grad += d_scores.colwise().sum();
  Tensor<T> d_hidden = d_scores * w2_.value;
  d_hidden = (cache.hidden.array() > T(0)).select(d_hidden, T(0));
  w1_.grad.noalias() += d_hidden.transpose() * cache.input;
  b1_.grad += d_hidden.colwise().sum();
  return d_hidden * w1_.value;
}

template class ReluMlp<double>;
template class ReluMlp<float>;

}  // namespace minparse::nn
