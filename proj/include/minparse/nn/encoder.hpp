#ifndef MINPARSE_NN_ENCODER_HPP
#define MINPARSE_NN_ENCODER_HPP

#include <optional>
#include <vector>

#include "minparse/nn/dropout.hpp"
#include "minparse/nn/lstm.hpp"

namespace minparse::nn {

struct EncoderOptions {
  Index input_size = 0;
  Index hidden_size = 200;  // per direction
  int layers = 2;           // 1 or 2
  bool forward = true;      // ablation switches
  bool backward = true;
  double dropout = 0.5;
};

/// Stacked bidirectional LSTM producing one feature vector per position.
///
/// One layer:  h_i = drop(f_i ; b_i)
/// Two layers: h_i = drop_a(f1_i ; b1_i) ; drop_c(f2_i ; b2_i), where layer 2
/// reads drop_b(f1 ; b1). The three dropout masks are drawn independently.
template <typename T>
class BiLstmEncoder {
 public:
  struct LayerCache {
    typename Lstm<T>::Cache fwd;
    typename Lstm<T>::Cache bwd;
    Tensor<T> output;         // concatenated directions, before dropout
    Tensor<T> feature_mask;   // empty when dropout is off
    Tensor<T> next_mask;      // mask on the connection to the next layer
  };
  struct Cache {
    std::vector<LayerCache> layers;
  };

  BiLstmEncoder(ParamStore<T>& store, const std::string& name, const EncoderOptions& options);

  void init(Rng& rng);

  const EncoderOptions& options() const { return options_; }
  Index layer_output_size() const { return directions() * options_.hidden_size; }
  Index output_size() const { return layer_output_size() * options_.layers; }

  /// `x` is n x input_size. In train mode with dropout > 0, `rng` is required.
  Tensor<T> forward(const Tensor<T>& x, Mode mode, Rng* rng, Cache* cache) const;
  Tensor<T> backward(const Cache& cache, const Tensor<T>& d_output);

  Lstm<T>* forward_lstm(int layer) { return fwd_[static_cast<std::size_t>(layer)] ? &*fwd_[static_cast<std::size_t>(layer)] : nullptr; }
  Lstm<T>* backward_lstm(int layer) { return bwd_[static_cast<std::size_t>(layer)] ? &*bwd_[static_cast<std::size_t>(layer)] : nullptr; }

 private:
  Index directions() const { return (options_.forward ? 1 : 0) + (options_.backward ? 1 : 0); }

  EncoderOptions options_;
  std::vector<std::optional<Lstm<T>>> fwd_;
  std::vector<std::optional<Lstm<T>>> bwd_;
};

}  // namespace minparse::nn

#endif  // MINPARSE_NN_ENCODER_HPP
