#ifndef MINPARSE_NN_ADADELTA_HPP
#define MINPARSE_NN_ADADELTA_HPP

#include "minparse/nn/param_store.hpp"

namespace minparse::nn {

struct Adadelta {
  double rho = 0.99;
  double epsilon = 1e-7;
  double l2 = 0.0;         // adds l2 * x to every gradient before the update
  double clip_norm = 0.0;  // global gradient-norm clip; 0 disables

  void validate() const;
};

/// One ADADELTA step over every parameter, then clears gradients:
///   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
///   dx      =  -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
///   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
///   x       <- x + dx
template <typename T>
void adadelta_update(ParamStore<T>& store, const Adadelta& opt);

}  // namespace minparse::nn

#endif  // MINPARSE_NN_ADADELTA_HPP
