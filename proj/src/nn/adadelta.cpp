#include "minparse/nn/adadelta.hpp"

#include <cassert>

namespace minparse::nn {

void Adadelta::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("ADADELTA rho must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ADADELTA epsilon must be positive");
  if (l2 < 0.0 || clip_norm < 0.0) throw std::invalid_argument("negative L2 or clip value");
}

template <typename T>
void adadelta_update(ParamStore<T>& store, const Adadelta& opt) {
  opt.validate();
  const T rho = static_cast<T>(opt.rho);
  const T eps = static_cast<T>(opt.epsilon);
  const T l2 = static_cast<T>(opt.l2);

  for (auto& p : store) {
    const auto shape_ok = [&](const Tensor<T>& t) {
      return t.rows() == p->value.rows() && t.cols() == p->value.cols();
    };
    if (!shape_ok(p->grad) || !shape_ok(p->mean_sq_grad) || !shape_ok(p->mean_sq_delta))
      throw std::logic_error("parameter '" + p->name + "' changed shape between updates");
    if (l2 != T(0)) p->grad += l2 * p->value;
  }

  T scale = T(1);
  if (opt.clip_norm > 0.0) {
    double sq = 0.0;
    for (const auto& p : store) sq += static_cast<double>(p->grad.squaredNorm());
    const double norm = std::sqrt(sq);
    if (norm > opt.clip_norm) scale = static_cast<T>(opt.clip_norm / norm);
  }

  for (auto& p : store) {
    auto g = (p->grad * scale).array();
    auto eg2 = p->mean_sq_grad.array();
    auto edx2 = p->mean_sq_delta.array();
    eg2 = rho * eg2 + (1 - rho) * g.square();
    const auto delta = (-((edx2 + eps).sqrt() / (eg2 + eps).sqrt()) * g).eval();
    edx2 = rho * edx2 + (1 - rho) * delta.square();
    p->value.array() += delta;
    p->grad.setZero();
    assert(p->value.allFinite() && "non-finite parameter after ADADELTA update");
  }
}

template void adadelta_update<double>(ParamStore<double>&, const Adadelta&);
template void adadelta_update<float>(ParamStore<float>&, const Adadelta&);

}  // namespace minparse::nn
