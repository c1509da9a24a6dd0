#ifndef MINPARSE_NN_TENSOR_HPP
#define MINPARSE_NN_TENSOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace minparse::nn {

/// Dense row-major 2-D array; vectors are 1 x N rows.
template <typename T>
using Tensor = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowVector = Eigen::Matrix<T, 1, Eigen::Dynamic>;

using Index = Eigen::Index;
using Rng = std::mt19937_64;

template <typename T>
bool all_finite(const Tensor<T>& t) {
  return t.allFinite();
}

inline void check_dims(Index got, Index want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(got) +
                                " vs " + std::to_string(want) + ")");
}

template <typename T>
void fill_uniform(Tensor<T>& t, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Index i = 0; i < t.size(); ++i) t.data()[i] = static_cast<T>(dist(rng));
}

}  // namespace minparse::nn

#endif  // MINPARSE_NN_TENSOR_HPP
