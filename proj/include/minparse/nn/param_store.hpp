#ifndef MINPARSE_NN_PARAM_STORE_HPP
#define MINPARSE_NN_PARAM_STORE_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "minparse/nn/tensor.hpp"

namespace minparse::nn {

/// A trainable tensor with its gradient accumulator and ADADELTA state.
template <typename T>
struct Param {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  Tensor<T> mean_sq_grad;   // E[g^2]
  Tensor<T> mean_sq_delta;  // E[dx^2]

  Index size() const { return value.size(); }
};

/// Named parameters in registration order. Addresses are stable for the
/// lifetime of the store, so layers keep plain references.
template <typename T>
class ParamStore {
 public:
  ParamStore() = default;
  ParamStore(const ParamStore&) = delete;
  ParamStore& operator=(const ParamStore&) = delete;
  ParamStore(ParamStore&&) = default;
  ParamStore& operator=(ParamStore&&) = default;

  /// Registers a zero-initialised parameter; names must be unique.
  Param<T>& add(const std::string& name, Index rows, Index cols);
  Param<T>& get(const std::string& name);
  const Param<T>& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  void zero_grad();
  Index total_size() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }
  std::size_t size() const { return params_.size(); }

 private:
  std::vector<std::unique_ptr<Param<T>>> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// uniform(-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out)))
template <typename T>
void init_glorot(Param<T>& p, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(p.value.rows() + p.value.cols()));
  fill_uniform(p.value, bound, rng);
}

}  // namespace minparse::nn

#endif  // MINPARSE_NN_PARAM_STORE_HPP
