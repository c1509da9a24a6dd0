#include "minparse/diagnostics.hpp"

#include <stdexcept>

#include "minparse/const_model.hpp"
#include "minparse/dep_model.hpp"
#include "minparse/nn/loss.hpp"
#include "minparse/synthetic.hpp"
#include "minparse/vocab.hpp"

namespace minparse {

namespace {

ModelConfig tiny_config(Task task, std::uint64_t seed) {
  ModelConfig c = task == Task::kDependency ? ModelConfig::dependency() : ModelConfig::constituency();
  c.word_dim = 4;
  c.tag_dim = 3;
  c.nonterminal_dim = task == Task::kConstituency ? 3 : 0;
  c.lstm_dim = 3;
  c.hidden = 6;
  c.dropout = 0.0;
  c.word_dropout = 0.0;
  c.min_form_count = 1;
  c.seed = seed;
  return c;
}

// Spreads values away from the tiny embedding init so that every tensor
// carries gradients well above round-off.
void randomize(ParamStore& store, std::uint64_t seed) {
  nn::Rng rng(seed);
  for (auto& p : store) nn::fill_uniform(p->value, 0.5, rng);
}

template <typename T>
void corrupt(nn::ParamStore<T>& store, const std::optional<std::string>& name) {
  if (!name) return;
  if (!store.contains(*name)) throw std::invalid_argument("no parameter named '" + *name + "'");
  auto& g = store.get(*name).grad;
  g.array() = g.array() * T(1.5) + T(0.1);
}

template <typename Parser, typename Tree>
nn::GradCheckReport check(Parser& parser, const std::vector<Tree>& corpus, const GradCheckSetup& setup) {
  std::vector<typename Parser::Example> examples;
  for (const auto& t : corpus) {
    auto ex = parser.make_example(t);
    if (!ex) throw std::logic_error("gradient check corpus is not derivable");
    examples.push_back(std::move(*ex));
  }
  parser.params().zero_grad();
  for (const auto& ex : examples) parser.accumulate(ex, nullptr);
  corrupt(parser.params(), setup.corrupt_param);
  auto loss = [&] {
    double total = 0;
    for (const auto& ex : examples) total += parser.loss(ex);
    return total;
  };
  return nn::grad_check(parser.params(), loss, setup.options);
}

}  // namespace

nn::GradCheckReport check_parser_gradients(Task task, const GradCheckSetup& setup) {
  SyntheticRng rng(setup.seed);
  const ModelConfig config = tiny_config(task, setup.seed);
  if (task == Task::kDependency) {
    std::vector<DepTree> corpus;
    for (int i = 0; i < setup.sentences; ++i) corpus.push_back(random_projective_tree(rng, setup.sentence_length));
    DepParser parser(config, build_vocab(corpus, 1), most_common_root_label(corpus));
    randomize(parser.params(), setup.seed + 1);
    return check(parser, corpus, setup);
  }
  std::vector<ConstTree> corpus;
  for (int i = 0; i < setup.sentences; ++i) corpus.push_back(random_const_tree(rng, setup.sentence_length));
  ConstParser parser(config, build_vocab(corpus, 1));
  randomize(parser.params(), setup.seed + 1);
  return check(parser, corpus, setup);
}

template <typename T>
std::vector<LayerCheck> check_layer_gradients(const nn::GradCheckOptions& options,
                                              const std::optional<std::string>& corrupt_param) {
  constexpr nn::Index n = 5, input = 4, hidden = 3;
  nn::Rng rng(options.seed + 11);
  nn::Tensor<T> x(n, input);
  nn::fill_uniform(x, 1.0, rng);
  std::vector<LayerCheck> out;

  // Linear read-out of the sequence output: L = sum(R .* H).
  auto run = [&](const std::string& layer, nn::ParamStore<T>& store, auto forward_backward, auto forward) {
    store.zero_grad();
    forward_backward();
    if (corrupt_param && store.contains(*corrupt_param)) corrupt(store, corrupt_param);
    out.push_back({layer, nn::grad_check(store, forward, options)});
  };

  {
    nn::ParamStore<T> store;
    nn::Lstm<T> lstm(store, "lstm", input, hidden);
    lstm.init(rng);
    nn::fill_uniform(store.get("lstm.b").value, 0.5, rng);
    nn::Tensor<T> r(n, hidden);
    nn::fill_uniform(r, 1.0, rng);
    run(
        "lstm", store,
        [&] {
          typename nn::Lstm<T>::Cache cache;
          lstm.forward(x, true, &cache);
          lstm.backward(cache, r);
        },
        [&] { return static_cast<double>((lstm.forward(x, true, nullptr).array() * r.array()).sum()); });
  }
  {
    nn::ParamStore<T> store;
    nn::ReluMlp<T> mlp(store, "mlp", input, 6, 4);
    mlp.init(rng);
    nn::fill_uniform(store.get("mlp.b1").value, 0.5, rng);
    const std::vector<int> gold = {0, 3, 1, 2, 3};
    auto total = [&](typename nn::ReluMlp<T>::Cache* cache, nn::Tensor<T>* d_scores) {
      const nn::Tensor<T> scores = mlp.forward(x, cache);
      if (d_scores) d_scores->resize(scores.rows(), scores.cols());
      double sum = 0;
      nn::RowVector<T> g;
      for (nn::Index i = 0; i < n; ++i) {
        sum += static_cast<double>(nn::nll_softmax<T>(scores.row(i), gold[static_cast<std::size_t>(i)],
                                                      d_scores ? &g : nullptr));
        if (d_scores) d_scores->row(i) = g;
      }
      return sum;
    };
    run(
        "mlp", store,
        [&] {
          typename nn::ReluMlp<T>::Cache cache;
          nn::Tensor<T> d_scores;
          total(&cache, &d_scores);
          mlp.backward(cache, d_scores);
        },
        [&] { return total(nullptr, nullptr); });
  }
  {
    nn::ParamStore<T> store;
    nn::EncoderOptions eo;
    eo.input_size = input;
    eo.hidden_size = hidden;
    eo.layers = 2;
    eo.dropout = 0.0;
    nn::BiLstmEncoder<T> encoder(store, "encoder", eo);
    encoder.init(rng);
    nn::Tensor<T> r(n, encoder.output_size());
    nn::fill_uniform(r, 1.0, rng);
    run(
        "encoder", store,
        [&] {
          typename nn::BiLstmEncoder<T>::Cache cache;
          encoder.forward(x, nn::Mode::kEval, nullptr, &cache);
          encoder.backward(cache, r);
        },
        [&] {
          return static_cast<double>(
              (encoder.forward(x, nn::Mode::kEval, nullptr, nullptr).array() * r.array()).sum());
        });
  }
  return out;
}

template std::vector<LayerCheck> check_layer_gradients<double>(const nn::GradCheckOptions&,
                                                               const std::optional<std::string>&);
template std::vector<LayerCheck> check_layer_gradients<float>(const nn::GradCheckOptions&,
                                                              const std::optional<std::string>&);

}  // namespace minparse
