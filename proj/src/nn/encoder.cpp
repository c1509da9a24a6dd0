#include "minparse/nn/encoder.hpp"

namespace minparse::nn {

template <typename T>
BiLstmEncoder<T>::BiLstmEncoder(ParamStore<T>& store, const std::string& name,
                                const EncoderOptions& options)
    : options_(options) {
  if (options.layers != 1 && options.layers != 2)
    throw std::invalid_argument("encoder supports 1 or 2 layers");
  if (!options.forward && !options.backward)
    throw std::invalid_argument("encoder needs at least one direction");
  check_dropout_rate(options.dropout);
  Index in = options.input_size;
  for (int l = 0; l < options.layers; ++l) {
    const std::string prefix = name + ".l" + std::to_string(l + 1);
    fwd_.emplace_back();
    bwd_.emplace_back();
    if (options.forward) fwd_.back().emplace(store, prefix + ".fwd", in, options.hidden_size);
    if (options.backward) bwd_.back().emplace(store, prefix + ".bwd", in, options.hidden_size);
    in = layer_output_size();
  }
}

template <typename T>
void BiLstmEncoder<T>::init(Rng& rng) {
  for (std::size_t l = 0; l < fwd_.size(); ++l) {
    if (fwd_[l]) fwd_[l]->init(rng);
    if (bwd_[l]) bwd_[l]->init(rng);
  }
}

template <typename T>
Tensor<T> BiLstmEncoder<T>::forward(const Tensor<T>& x, Mode mode, Rng* rng, Cache* cache) const {
  if (x.rows() == 0) throw std::invalid_argument("cannot encode an empty sentence");
  check_dims(x.cols(), options_.input_size, "encoder input");
  const bool drop = mode == Mode::kTrain && options_.dropout > 0.0;
  if (drop && !rng) throw std::invalid_argument("train-mode dropout needs a random generator");

  const Index n = x.rows();
  const Index width = layer_output_size();
  const Index H = options_.hidden_size;
  Tensor<T> result(n, output_size());
  Tensor<T> input = x;
  if (cache) cache->layers.assign(static_cast<std::size_t>(options_.layers), {});

  for (int l = 0; l < options_.layers; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    LayerCache local;
    LayerCache& lc = cache ? cache->layers[ul] : local;
    Tensor<T> out(n, width);
    Index col = 0;
    if (fwd_[ul]) {
      out.middleCols(col, H) = fwd_[ul]->forward(input, false, cache ? &lc.fwd : nullptr);
      col += H;
    }
    if (bwd_[ul]) out.middleCols(col, H) = bwd_[ul]->forward(input, true, cache ? &lc.bwd : nullptr);

    Tensor<T> feature = out;
    if (drop) {
      lc.feature_mask = dropout_mask<T>(n, width, options_.dropout, *rng);
      feature = out.cwiseProduct(lc.feature_mask);
    }
    result.middleCols(l * width, width) = feature;
    if (l + 1 < options_.layers) {
      if (drop) {
        lc.next_mask = dropout_mask<T>(n, width, options_.dropout, *rng);
        input = out.cwiseProduct(lc.next_mask);
      } else {
        input = out;
      }
    }
    if (cache) lc.output = std::move(out);
  }
  return result;
}

template <typename T>
Tensor<T> BiLstmEncoder<T>::backward(const Cache& cache, const Tensor<T>& d_output) {
  const Index width = layer_output_size();
  const Index H = options_.hidden_size;
  check_dims(d_output.cols(), output_size(), "encoder output gradient");
  Tensor<T> d_next;  // gradient flowing into layer l's output from layer l+1
  Tensor<T> d_input;
  for (int l = options_.layers - 1; l >= 0; --l) {
    const auto ul = static_cast<std::size_t>(l);
    const LayerCache& lc = cache.layers[ul];
    Tensor<T> d_out = d_output.middleCols(l * width, width);
    if (lc.feature_mask.size() != 0) d_out = d_out.cwiseProduct(lc.feature_mask);
    if (d_next.size() != 0) {
      d_out += lc.next_mask.size() != 0 ? Tensor<T>(d_next.cwiseProduct(lc.next_mask)) : d_next;
    }
    Index col = 0;
    d_input = Tensor<T>::Zero(d_output.rows(), l == 0 ? options_.input_size : width);
    if (fwd_[ul]) {
      d_input += fwd_[ul]->backward(lc.fwd, d_out.middleCols(col, H));
      col += H;
    }
    if (bwd_[ul]) d_input += bwd_[ul]->backward(lc.bwd, d_out.middleCols(col, H));
    d_next = d_input;
  }
  return d_input;
}

template class BiLstmEncoder<double>;
template class BiLstmEncoder<float>;

}  // namespace minparse::nn
