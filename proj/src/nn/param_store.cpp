#include "minparse/nn/param_store.hpp"

namespace minparse::nn {

template <typename T>
Param<T>& ParamStore<T>::add(const std::string& name, Index rows, Index cols) {
  if (contains(name)) throw std::invalid_argument("duplicate parameter name '" + name + "'");
  auto p = std::make_unique<Param<T>>();
  p->name = name;
  p->value = Tensor<T>::Zero(rows, cols);
  p->grad = Tensor<T>::Zero(rows, cols);
  p->mean_sq_grad = Tensor<T>::Zero(rows, cols);
  p->mean_sq_delta = Tensor<T>::Zero(rows, cols);
  index_.emplace(name, params_.size());
  params_.push_back(std::move(p));
  return *params_.back();
}

template <typename T>
Param<T>& ParamStore<T>::get(const std::string& name) {
  const auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("no parameter named '" + name + "'");
  return *params_[it->second];
}

template <typename T>
const Param<T>& ParamStore<T>::get(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("no parameter named '" + name + "'");
  return *params_[it->second];
}

template <typename T>
void ParamStore<T>::zero_grad() {
  for (auto& p : params_) p->grad.setZero();
}

template <typename T>
Index ParamStore<T>::total_size() const {
  Index n = 0;
  for (const auto& p : params_) n += p->size();
  return n;
}

template class ParamStore<double>;
template class ParamStore<float>;

}  // namespace minparse::nn
