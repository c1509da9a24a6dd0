#include "minparse/model.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "minparse/nn/adadelta.hpp"
#include "minparse/nn/loss.hpp"

namespace minparse {

std::string to_string(Task task) { return task == Task::kDependency ? "dep" : "const"; }

Task parse_task(const std::string& text) {
  if (text == "dep") return Task::kDependency;
  if (text == "const") return Task::kConstituency;
  throw std::invalid_argument("unknown task '" + text + "' (expected dep or const)");
}

// ---------------------------------------------------------------------------
// ModelConfig

ModelConfig ModelConfig::dependency() { return ModelConfig{}; }

ModelConfig ModelConfig::constituency() {
  ModelConfig c;
  c.task = Task::kConstituency;
  c.word_dim = 100;
  c.tag_dim = 100;
  c.nonterminal_dim = 100;
  c.hidden = 1000;
  c.l2 = 1e-8;
  c.hierarchical = false;
  return c;
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(word_dim, "word_dim");
  if (use_tags) positive(tag_dim, "tag_dim");
  if (task == Task::kConstituency) positive(nonterminal_dim, "nonterminal_dim");
  positive(lstm_dim, "lstm_dim");
  positive(hidden, "hidden");
  positive(epochs, "epochs");
  positive(batch_size, "batch_size");
  positive(min_form_count, "min_form_count");
  if (layers != 1 && layers != 2) throw std::invalid_argument("layers must be 1 or 2");
  if (!forward_lstm && !backward_lstm) throw std::invalid_argument("at least one LSTM direction is required");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw std::invalid_argument("dropout must lie in [0, 1)");
  if (word_dropout < 0.0) throw std::invalid_argument("word_dropout must be non-negative");
  if (promote_cap < 0) throw std::invalid_argument("promote_cap must be non-negative");
  nn::Adadelta{rho, epsilon, l2, clip_norm}.validate();
}

nlohmann::json ModelConfig::to_json() const {
  return {{"task", to_string(task)},
          {"word_dim", word_dim},
          {"tag_dim", tag_dim},
          {"nonterminal_dim", nonterminal_dim},
          {"use_tags", use_tags},
          {"lstm_dim", lstm_dim},
          {"layers", layers},
          {"hidden", hidden},
          {"forward_lstm", forward_lstm},
          {"backward_lstm", backward_lstm},
          {"hierarchical", hierarchical},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"average_batch_loss", average_batch_loss},
          {"dropout", dropout},
          {"l2", l2},
          {"rho", rho},
          {"epsilon", epsilon},
          {"clip_norm", clip_norm},
          {"min_form_count", min_form_count},
          {"word_dropout", word_dropout},
          {"promote_cap", promote_cap},
          {"seed", seed}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.task = parse_task(j.at("task").get<std::string>());
  j.at("word_dim").get_to(c.word_dim);
  j.at("tag_dim").get_to(c.tag_dim);
  j.at("nonterminal_dim").get_to(c.nonterminal_dim);
  j.at("use_tags").get_to(c.use_tags);
  j.at("lstm_dim").get_to(c.lstm_dim);
  j.at("layers").get_to(c.layers);
  j.at("hidden").get_to(c.hidden);
  j.at("forward_lstm").get_to(c.forward_lstm);
  j.at("backward_lstm").get_to(c.backward_lstm);
  j.at("hierarchical").get_to(c.hierarchical);
  j.at("epochs").get_to(c.epochs);
  j.at("batch_size").get_to(c.batch_size);
  j.at("average_batch_loss").get_to(c.average_batch_loss);
  j.at("dropout").get_to(c.dropout);
  j.at("l2").get_to(c.l2);
  j.at("rho").get_to(c.rho);
  j.at("epsilon").get_to(c.epsilon);
  j.at("clip_norm").get_to(c.clip_norm);
  j.at("min_form_count").get_to(c.min_form_count);
  j.at("word_dropout").get_to(c.word_dropout);
  j.at("promote_cap").get_to(c.promote_cap);
  j.at("seed").get_to(c.seed);
  return c;
}

std::uint64_t ModelConfig::hash() const { return fnv1a(to_json().dump()); }

void ModelConfig::echo(std::ostream& out) const {
  const nlohmann::json fields = to_json();
  for (const auto& [key, value] : fields.items()) {
    out << "config." << key << '=';
    if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// NetworkCore

namespace {

nn::EncoderOptions encoder_options(const ModelConfig& c) {
  nn::EncoderOptions o;
  o.input_size = c.word_dim + (c.use_tags ? c.tag_dim : 0);
  o.hidden_size = c.lstm_dim;
  o.layers = c.layers;
  o.forward = c.forward_lstm;
  o.backward = c.backward_lstm;
  o.dropout = c.dropout;
  return o;
}

}  // namespace

NetworkCore::NetworkCore(ParamStore& store, const ModelConfig& config, const Vocab& vocab)
    : word_embed_(store.add("embed.word", vocab.forms.size(), config.word_dim)),
      tag_embed_(config.use_tags ? &store.add("embed.tag", vocab.tags.size(), config.tag_dim) : nullptr),
      encoder_(store, "encoder", encoder_options(config)),
      none_stack_(store.add("none.stack", 1, encoder_.output_size())),
      none_queue_(store.add("none.queue", 1, encoder_.output_size())) {}

void NetworkCore::init(nn::Rng& rng) {
  nn::fill_uniform(word_embed_.value, 0.01, rng);
  if (tag_embed_) nn::fill_uniform(tag_embed_->value, 0.01, rng);
  encoder_.init(rng);
  nn::fill_uniform(none_stack_.value, 0.01, rng);
  nn::fill_uniform(none_queue_.value, 0.01, rng);
}

void NetworkCore::lookup(const Sentence& sentence, const Vocab& vocab, std::vector<int>& words,
                         std::vector<int>& tags) const {
  words.resize(static_cast<std::size_t>(sentence.size()));
  tags.resize(static_cast<std::size_t>(sentence.size()));
  for (int i = 0; i < sentence.size(); ++i) {
    words[i] = vocab.forms.id(sentence[i].form);
    tags[i] = vocab.tags.id(sentence[i].tag);
  }
}

Tensor NetworkCore::encode(const std::vector<int>& words, const std::vector<int>& tags, nn::Rng* rng,
                           Cache* cache) const {
  const auto n = static_cast<nn::Index>(words.size());
  const nn::Index wd = word_embed_.value.cols();
  Tensor input(n, encoder_.options().input_size);
  for (nn::Index i = 0; i < n; ++i) {
    input.row(i).head(wd) = word_embed_.value.row(words[i]);
    if (tag_embed_) input.row(i).tail(tag_embed_->value.cols()) = tag_embed_->value.row(tags[i]);
  }
  if (cache) {
    cache->words = words;
    cache->tags = tags;
  }
  return encoder_.forward(input, rng ? nn::Mode::kTrain : nn::Mode::kEval, rng,
                          cache ? &cache->encoder : nullptr);
}

void NetworkCore::backward(const Cache& cache, const Tensor& d_positions) {
  const Tensor d_input = encoder_.backward(cache.encoder, d_positions);
  const nn::Index wd = word_embed_.value.cols();
  for (std::size_t i = 0; i < cache.words.size(); ++i) {
    const auto r = static_cast<nn::Index>(i);
    word_embed_.grad.row(cache.words[i]) += d_input.row(r).head(wd);
    if (tag_embed_) tag_embed_->grad.row(cache.tags[i]) += d_input.row(r).tail(tag_embed_->value.cols());
  }
}

// ---------------------------------------------------------------------------
// ActionHeads

ActionHeads::ActionHeads(ParamStore& store, const std::string& name, nn::Index input_size,
                         nn::Index hidden, std::vector<bool> labeled_kinds, int label_count,
                         bool hierarchical)
    : labeled_(std::move(labeled_kinds)), label_count_(label_count), hierarchical_(hierarchical) {
  if (label_count < 1) throw std::invalid_argument("classifier needs at least one label");
  mlps_.reserve(2);
  if (hierarchical) {
    mlps_.emplace_back(store, name + ".struct", input_size, hidden, kind_count());
    mlps_.emplace_back(store, name + ".label", input_size, hidden, label_count);
  } else {
    mlps_.emplace_back(store, name + ".action", input_size, hidden, flat_size());
  }
}

void ActionHeads::init(nn::Rng& rng) {
  for (auto& m : mlps_) m.init(rng);
}

int ActionHeads::flat_size() const {
  int size = 0;
  for (bool l : labeled_) size += l ? label_count_ : 1;
  return size;
}

int ActionHeads::flat_index(const Decision& d) const {
  int offset = 0;
  for (int k = 0; k < d.kind; ++k) offset += labeled_[k] ? label_count_ : 1;
  return offset + (labeled_[d.kind] ? d.label : 0);
}

Decision ActionHeads::from_flat(int index) const {
  for (int k = 0; k < kind_count(); ++k) {
    const int width = labeled_[k] ? label_count_ : 1;
    if (index < width) return {k, labeled_[k] ? index : -1};
    index -= width;
  }
  throw std::out_of_range("flat action index out of range");
}

ActionScores ActionHeads::score(const Eigen::Ref<const RowVector>& features) const {
  ActionScores s;
  const Tensor x = features;
  if (hierarchical_) {
    s.structural = mlps_[0].forward(x, nullptr).row(0);
    s.labels = mlps_[1].forward(x, nullptr).row(0);
  } else {
    s.flat = mlps_[0].forward(x, nullptr).row(0);
  }
  return s;
}

Decision ActionHeads::decide(const ActionScores& scores, const std::vector<bool>& legal_kinds) const {
  auto argmax = [](const RowVector& v, auto allowed) {
    int best = -1;
    for (int i = 0; i < v.size(); ++i)
      if (allowed(i) && (best < 0 || v(i) > v(best))) best = i;
    return best;
  };
  if (hierarchical_) {
    const int kind = argmax(scores.structural, [&](int k) { return legal_kinds[k]; });
    if (kind < 0) throw std::logic_error("no legal action");
    const int label = labeled_[kind] ? argmax(scores.labels, [](int) { return true; }) : -1;
    return {kind, label};
  }
  const int best = argmax(scores.flat, [&](int i) { return legal_kinds[from_flat(i).kind]; });
  if (best < 0) throw std::logic_error("no legal action");
  return from_flat(best);
}

Real ActionHeads::loss(const Tensor& features, std::span<const Decision> gold, Tensor* d_features) {
  const nn::Index m = features.rows();
  Real total = 0;
  if (!hierarchical_) {
    nn::ReluMlp<Real>::Cache cache;
    const Tensor scores = mlps_[0].forward(features, d_features ? &cache : nullptr);
    Tensor d_scores(m, scores.cols());
    RowVector g;
    for (nn::Index r = 0; r < m; ++r) {
      total += nn::nll_softmax<Real>(scores.row(r), flat_index(gold[r]), d_features ? &g : nullptr);
      if (d_features) d_scores.row(r) = g;
    }
    if (d_features) *d_features = mlps_[0].backward(cache, d_scores);
    return total;
  }

  nn::ReluMlp<Real>::Cache struct_cache;
  const Tensor struct_scores = mlps_[0].forward(features, d_features ? &struct_cache : nullptr);
  Tensor d_struct(m, struct_scores.cols());
  RowVector g;
  std::vector<nn::Index> labeled_rows;
  for (nn::Index r = 0; r < m; ++r) {
    total += nn::nll_softmax<Real>(struct_scores.row(r), gold[r].kind, d_features ? &g : nullptr);
    if (d_features) d_struct.row(r) = g;
    if (labeled_[gold[r].kind]) labeled_rows.push_back(r);
  }
  if (d_features) *d_features = mlps_[0].backward(struct_cache, d_struct);
  if (labeled_rows.empty()) return total;

  Tensor label_in(static_cast<nn::Index>(labeled_rows.size()), features.cols());
  for (std::size_t i = 0; i < labeled_rows.size(); ++i)
    label_in.row(static_cast<nn::Index>(i)) = features.row(labeled_rows[i]);
  nn::ReluMlp<Real>::Cache label_cache;
  const Tensor label_scores = mlps_[1].forward(label_in, d_features ? &label_cache : nullptr);
  Tensor d_label(label_scores.rows(), label_scores.cols());
  for (std::size_t i = 0; i < labeled_rows.size(); ++i) {
    const auto r = static_cast<nn::Index>(i);
    total += nn::nll_softmax<Real>(label_scores.row(r), gold[labeled_rows[i]].label,
                                   d_features ? &g : nullptr);
    if (d_features) d_label.row(r) = g;
  }
  if (d_features) {
    const Tensor d_in = mlps_[1].backward(label_cache, d_label);
    for (std::size_t i = 0; i < labeled_rows.size(); ++i)
      d_features->row(labeled_rows[i]) += d_in.row(static_cast<nn::Index>(i));
  }
  return total;
}

std::vector<int> drop_rare_words(const std::vector<int>& words, const Lexicon& forms, double alpha,
                                 nn::Rng& rng) {
  std::vector<int> out = words;
  if (alpha <= 0) return out;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (auto& w : out) {
    const int count = forms.count(w);
    if (count > 0 && uniform(rng) < alpha / (alpha + count)) w = Lexicon::kUnk;
  }
  return out;
}

}  // namespace minparse
