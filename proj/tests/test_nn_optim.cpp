#include <cmath>

#include "doctest.h"
#include "minparse/nn/adadelta.hpp"
#include "minparse/nn/dropout.hpp"

using namespace minparse::nn;

TEST_CASE("dropout identities") {
  Rng rng(1);
  Tensor<double> x(2, 3);
  x << 1, -2, 3, 0.5, 7, -0.25;
  CHECK(dropout(x, 0.0, Mode::kTrain, rng) == x);
  CHECK(dropout(x, 0.0, Mode::kEval, rng) == x);
  CHECK(dropout(x, 0.5, Mode::kEval, rng) == x);
}

TEST_CASE("dropout rate must lie in [0, 1)") {
  Rng rng(1);
  Tensor<double> x = Tensor<double>::Ones(1, 2);
  CHECK_THROWS_AS(dropout(x, 1.0, Mode::kTrain, rng), std::invalid_argument);
  CHECK_THROWS_AS(dropout(x, -0.1, Mode::kEval, rng), std::invalid_argument);
  CHECK_THROWS_AS(dropout_mask<double>(1, 2, 1.5, rng), std::invalid_argument);
}

TEST_CASE("train-mode dropout preserves the mean") {
  Rng rng(2);
  RowVector<double> v(4);
  v << 1.0, -2.5, 0.3, 10.0;
  Tensor<double> x = v.replicate(1000, 1);
  RowVector<double> sum = RowVector<double>::Zero(4);
  int zeros = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Tensor<double> y = dropout(x, 0.5, Mode::kTrain, rng);
    sum += y.colwise().sum();
    zeros += static_cast<int>((y.array() == 0.0).count());
    for (Index i = 0; i < y.size(); ++i) {
      const double ratio = y.data()[i] / x.data()[i];
      REQUIRE((ratio == 0.0 || ratio == 2.0));
    }
  }
  const RowVector<double> mean = sum / 1e6;
  for (Index k = 0; k < 4; ++k) CHECK(std::abs(mean(k) - v(k)) <= 0.01 * std::abs(v(k)));
  CHECK(std::abs(zeros / 4e6 - 0.5) < 0.002);
}

TEST_CASE("adadelta with zero gradient only decays the accumulators") {
  ParamStore<double> store;
  auto& p = store.add("x", 1, 2);
  p.value << 1.5, -3.0;
  p.mean_sq_grad << 0.4, 2.0;
  p.mean_sq_delta << 0.1, 0.02;
  adadelta_update(store, {});
  CHECK(p.value(0, 0) == 1.5);
  CHECK(p.value(0, 1) == -3.0);
  CHECK(std::abs(p.mean_sq_grad(0, 0) - 0.99 * 0.4) < 1e-15);
  CHECK(std::abs(p.mean_sq_grad(0, 1) - 0.99 * 2.0) < 1e-15);
  CHECK(std::abs(p.mean_sq_delta(0, 0) - 0.99 * 0.1) < 1e-15);
  CHECK(std::abs(p.mean_sq_delta(0, 1) - 0.99 * 0.02) < 1e-15);
}

TEST_CASE("adadelta two-step scalar trace") {
  const double rho = 0.99, eps = 1e-7;
  ParamStore<double> store;
  auto& p = store.add("x", 1, 1);
  p.value(0, 0) = 0.5;

  // Step 1, fresh accumulators, g = 1.
  double eg2 = (1 - rho) * 1.0;
  const double dx1 = -std::sqrt(0.0 + eps) / std::sqrt(eg2 + eps);
  double edx2 = (1 - rho) * dx1 * dx1;
  p.grad(0, 0) = 1.0;
  adadelta_update(store, {.rho = rho, .epsilon = eps});
  CHECK(std::abs(eg2 - 0.01) < 1e-15);
  CHECK(std::abs(dx1 - (-3.1622e-3)) < 1e-7);
  CHECK(std::abs(p.value(0, 0) - (0.5 + dx1)) < 1e-12);
  CHECK(std::abs(p.mean_sq_grad(0, 0) - eg2) < 1e-12);
  CHECK(std::abs(p.mean_sq_delta(0, 0) - edx2) < 1e-12);
  CHECK(p.grad(0, 0) == 0.0);

  // Step 2, g = 1 again.
  eg2 = rho * eg2 + (1 - rho);
  const double dx2 = -std::sqrt(edx2 + eps) / std::sqrt(eg2 + eps);
  edx2 = rho * edx2 + (1 - rho) * dx2 * dx2;
  p.grad(0, 0) = 1.0;
  adadelta_update(store, {.rho = rho, .epsilon = eps});
  CHECK(std::abs(p.value(0, 0) - (0.5 + dx1 + dx2)) < 1e-12);
  CHECK(std::abs(p.mean_sq_grad(0, 0) - eg2) < 1e-12);
  CHECK(std::abs(p.mean_sq_delta(0, 0) - edx2) < 1e-12);
}

TEST_CASE("l2 penalty adds lambda * x to the gradient") {
  ParamStore<double> a, b;
  auto& pa = a.add("x", 1, 1);
  auto& pb = b.add("x", 1, 1);
  pa.value(0, 0) = pb.value(0, 0) = 2.0;
  pa.grad(0, 0) = 0.3 + 1e-8 * 2.0;
  pb.grad(0, 0) = 0.3;
  adadelta_update(a, {});
  adadelta_update(b, {.l2 = 1e-8});
  CHECK(pa.value(0, 0) == pb.value(0, 0));
  CHECK(pa.mean_sq_grad(0, 0) == pb.mean_sq_grad(0, 0));
}

TEST_CASE("adadelta is independent of registration order") {
  ParamStore<double> a, b;
  a.add("p", 2, 2);
  a.add("q", 1, 3);
  b.add("q", 1, 3);
  b.add("p", 2, 2);
  Rng rng(4);
  for (const char* name : {"p", "q"}) {
    fill_uniform(a.get(name).value, 1.0, rng);
    fill_uniform(a.get(name).grad, 1.0, rng);
    b.get(name).value = a.get(name).value;
    b.get(name).grad = a.get(name).grad;
  }
  adadelta_update(a, {});
  adadelta_update(b, {});
  for (const char* name : {"p", "q"}) CHECK(a.get(name).value == b.get(name).value);
}

TEST_CASE("adadelta rejects shape drift and bad settings") {
  ParamStore<double> store;
  auto& p = store.add("w", 2, 2);
  p.mean_sq_grad.resize(1, 4);
  CHECK_THROWS_AS(adadelta_update(store, {}), std::logic_error);

  ParamStore<double> ok;
  ok.add("w", 1, 1);
  CHECK_THROWS_AS(adadelta_update(ok, {.rho = 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(adadelta_update(ok, {.epsilon = 0.0}), std::invalid_argument);
}

TEST_CASE("param store") {
  ParamStore<double> store;
  auto& w = store.add("w", 2, 3);
  CHECK(w.value.isZero(0.0));
  CHECK(w.grad.rows() == 2);
  CHECK(w.mean_sq_delta.cols() == 3);
  CHECK(store.total_size() == 6);
  CHECK_THROWS(store.add("w", 1, 1));
  CHECK_THROWS(store.get("missing"));
  w.grad.setOnes();
  store.zero_grad();
  CHECK(w.grad.isZero(0.0));
}
