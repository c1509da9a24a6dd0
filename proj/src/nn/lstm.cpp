#include "minparse/nn/lstm.hpp"

namespace minparse::nn {

namespace {

template <typename Derived>
auto sigmoid(const Eigen::ArrayBase<Derived>& a) {
  return (1 + (-a).exp()).inverse();
}

}  // namespace

template <typename T>
Lstm<T>::Lstm(ParamStore<T>& store, const std::string& name, Index input_size, Index hidden_size)
    : input_size_(input_size),
      hidden_size_(hidden_size),
      wx_(store.add(name + ".Wx", 4 * hidden_size, input_size)),
      wh_(store.add(name + ".Wh", 4 * hidden_size, hidden_size)),
      b_(store.add(name + ".b", 1, 4 * hidden_size)) {}

template <typename T>
void Lstm<T>::init(Rng& rng) {
  // Fan sizes are taken per gate block.
  const Index H = hidden_size_;
  const double bx = std::sqrt(6.0 / static_cast<double>(H + input_size_));
  const double bh = std::sqrt(6.0 / static_cast<double>(H + H));
  fill_uniform(wx_.value, bx, rng);
  fill_uniform(wh_.value, bh, rng);
  b_.value.setZero();
  b_.value.middleCols(H, H).setConstant(T(1));
}

template <typename T>
std::pair<RowVector<T>, RowVector<T>> Lstm<T>::step(const RowVector<T>& x,
                                                    const RowVector<T>& h_prev,
                                                    const RowVector<T>& c_prev) const {
  check_dims(x.size(), input_size_, "lstm input");
  check_dims(h_prev.size(), hidden_size_, "lstm hidden state");
  check_dims(c_prev.size(), hidden_size_, "lstm cell state");
  const Index H = hidden_size_;
  RowVector<T> a = x * wx_.value.transpose() + h_prev * wh_.value.transpose() + b_.value;
  const RowVector<T> i = sigmoid(a.head(H).array()).matrix();
  const RowVector<T> f = sigmoid(a.segment(H, H).array()).matrix();
  const RowVector<T> o = sigmoid(a.segment(2 * H, H).array()).matrix();
  const RowVector<T> g = a.tail(H).array().tanh().matrix();
  RowVector<T> c = f.cwiseProduct(c_prev) + i.cwiseProduct(g);
  RowVector<T> h = o.cwiseProduct(c.array().tanh().matrix());
  return {std::move(h), std::move(c)};
}

template <typename T>
Tensor<T> Lstm<T>::forward(const Tensor<T>& x, bool reverse, Cache* cache) const {
  check_dims(x.cols(), input_size_, "lstm input");
  const Index n = x.rows();
  const Index H = hidden_size_;
  Tensor<T> pre = x * wx_.value.transpose();
  pre.rowwise() += b_.value.row(0);

  Tensor<T> gates(n, 4 * H), cell(n, H), tanh_cell(n, H), out(n, H);
  RowVector<T> h_prev = RowVector<T>::Zero(H);
  RowVector<T> c_prev = RowVector<T>::Zero(H);
  for (Index k = 0; k < n; ++k) {
    const Index t = reverse ? n - 1 - k : k;
    RowVector<T> a = pre.row(t) + h_prev * wh_.value.transpose();
    auto g = gates.row(t);
    g.head(3 * H) = sigmoid(a.head(3 * H).array()).matrix();
    g.tail(H) = a.tail(H).array().tanh().matrix();
    cell.row(t) = g.segment(H, H).cwiseProduct(c_prev) + g.head(H).cwiseProduct(g.tail(H));
    tanh_cell.row(t) = cell.row(t).array().tanh().matrix();
    out.row(t) = g.segment(2 * H, H).cwiseProduct(tanh_cell.row(t));
    h_prev = out.row(t);
    c_prev = cell.row(t);
  }
  if (cache) {
    cache->input = x;
    cache->gates = std::move(gates);
    cache->cell = std::move(cell);
    cache->tanh_cell = std::move(tanh_cell);
    cache->output = out;
    cache->reverse = reverse;
  }
  return out;
}

template <typename T>
Tensor<T> Lstm<T>::backward(const Cache& cache, const Tensor<T>& d_output) {
  const Index n = cache.input.rows();
  const Index H = hidden_size_;
  check_dims(d_output.rows(), n, "lstm output gradient");
  check_dims(d_output.cols(), H, "lstm output gradient");

  Tensor<T> d_pre(n, 4 * H);
  Tensor<T> h_prev_all = Tensor<T>::Zero(n, H);
  RowVector<T> dh_next = RowVector<T>::Zero(H);
  RowVector<T> dc_next = RowVector<T>::Zero(H);
  const RowVector<T> zero = RowVector<T>::Zero(H);

  for (Index k = n - 1; k >= 0; --k) {
    const Index t = cache.reverse ? n - 1 - k : k;
    const bool has_prev = k > 0;
    const Index tp = cache.reverse ? t + 1 : t - 1;

    const auto g = cache.gates.row(t);
    const auto i = g.head(H).array();
    const auto f = g.segment(H, H).array();
    const auto o = g.segment(2 * H, H).array();
    const auto cand = g.tail(H).array();
    const auto tc = cache.tanh_cell.row(t).array();
    const RowVector<T> c_prev = has_prev ? RowVector<T>(cache.cell.row(tp)) : zero;

    const RowVector<T> dh = d_output.row(t) + dh_next;
    const auto dha = dh.array();
    const RowVector<T> dc = (dha * o * (1 - tc.square())).matrix() + dc_next;
    const auto dca = dc.array();

    auto da = d_pre.row(t);
    da.head(H) = (dca * cand * i * (1 - i)).matrix();
    da.segment(H, H) = (dca * c_prev.array() * f * (1 - f)).matrix();
    da.segment(2 * H, H) = (dha * tc * o * (1 - o)).matrix();
    da.tail(H) = (dca * i * (1 - cand.square())).matrix();

    dc_next = (dca * f).matrix();
    dh_next = da * wh_.value;
    if (has_prev) h_prev_all.row(t) = cache.output.row(tp);
  }
  wx_.grad.noalias() += d_pre.transpose() * cache.input;
  wh_.grad.noalias() += d_pre.transpose() * h_prev_all;
  b_.grad += d_pre.colwise().sum();
  return d_pre * wx_.value;
}

template class Lstm<double>;
template class Lstm<float>;

}  // namespace minparse::nn
