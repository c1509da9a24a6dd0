#include "minparse/dep_model.hpp"

#include <map>
#include <stdexcept>

#include "minparse/serialize.hpp"

namespace minparse {

const std::vector<bool>& DepParser::labeled_kinds() {
  static const std::vector<bool> kinds = {false, true, true};
  return kinds;
}

DepParser::DepParser(ModelConfig config, Vocab vocab, std::string root_label)
    : config_(std::move(config)),
      vocab_(std::move(vocab)),
      root_label_(std::move(root_label)),
      store_(std::make_unique<ParamStore>()),
      core_(*store_, (config_.validate(), config_), vocab_),
      heads_(*store_, "head", DepFeatures::kSlots * core_.position_size(), config_.hidden,
             labeled_kinds(), vocab_.dep_labels.real_size(), config_.hierarchical) {
  if (config_.task != Task::kDependency)
    throw std::invalid_argument("dependency parser needs a dep configuration");
}

void DepParser::init() {
  nn::Rng rng(config_.seed);
  core_.init(rng);
  heads_.init(rng);
}

DepAction DepParser::to_action(const Decision& d) const {
  switch (d.kind) {
    case 0: return DepAction::shift();
    case 1: return DepAction::left(vocab_.dep_labels.str(vocab_id(d.label)));
    case 2: return DepAction::right(vocab_.dep_labels.str(vocab_id(d.label)));
  }
  throw std::out_of_range("bad dependency decision kind");
}

Decision DepParser::to_decision(const DepAction& a) const {
  if (a.kind == DepAction::Kind::kShift) return {0, -1};
  if (!vocab_.dep_labels.contains(a.label))
    throw std::out_of_range("unknown dependency label '" + a.label + "'");
  return {static_cast<int>(a.kind), label_index(vocab_.dep_labels.id(a.label))};
}

std::optional<DepParser::Example> DepParser::make_example(const DepTree& gold) const {
  std::vector<DepAction> actions;
  try {
    actions = dep_oracle(gold);
  } catch (const TransitionError&) {
    return std::nullopt;
  }
  Example ex;
  core_.lookup(gold.sentence, vocab_, ex.words, ex.tags);
  DepState state(gold.sentence.size());
  for (const auto& a : actions) {
    ex.states.push_back(extract_dep(state));
    try {
      ex.gold.push_back(to_decision(a));
    } catch (const std::out_of_range&) {
      return std::nullopt;
    }
    state = state.apply(a);
  }
  return ex;
}

Real DepParser::run(const Example& ex, nn::Rng* rng, bool backprop) {
  const std::vector<int> words = rng ? drop_rare_words(ex.words, vocab_.forms, config_.word_dropout, *rng) : ex.words;
  NetworkCore::Cache cache;
  const Tensor encoded = core_.encode(words, ex.tags, rng, backprop ? &cache : nullptr);

  const auto m = static_cast<nn::Index>(ex.states.size());
  Tensor features(m, feature_size());
  for (nn::Index r = 0; r < m; ++r)
    core_.gather(ex.states[static_cast<std::size_t>(r)].positions, DepFeatures::kFamilies, encoded,
                 features.row(r));

  if (!backprop) return heads_.loss(features, ex.gold, nullptr);

  Tensor d_features;
  const Real total = heads_.loss(features, ex.gold, &d_features);
  Tensor d_encoded = Tensor::Zero(encoded.rows(), encoded.cols());
  for (nn::Index r = 0; r < m; ++r)
    core_.scatter(ex.states[static_cast<std::size_t>(r)].positions, DepFeatures::kFamilies,
                  d_features.row(r), d_encoded);
  core_.backward(cache, d_encoded);
  return total;
}

Real DepParser::accumulate(const Example& example, nn::Rng* rng) { return run(example, rng, true); }

Real DepParser::loss(const Example& example) { return run(example, nullptr, false); }

Tensor DepParser::encode(const Sentence& sentence) const {
  std::vector<int> words, tags;
  core_.lookup(sentence, vocab_, words, tags);
  return core_.encode(words, tags, nullptr, nullptr);
}

ActionScores DepParser::score(const DepState& state, const Tensor& encoded) const {
  RowVector row(feature_size());
  core_.gather(extract_dep(state).positions, DepFeatures::kFamilies, encoded, row);
  return heads_.score(row);
}

DepTree DepParser::parse(const Sentence& sentence) const {
  if (sentence.size() == 0) throw std::invalid_argument("cannot parse an empty sentence");
  const Tensor encoded = encode(sentence);
  DepState state(sentence.size());
  while (!state.terminal()) {
    const DepLegal legal = state.legal();
    const Decision d = heads_.decide(score(state, encoded), {legal.shift, legal.left, legal.right});
    state = state.apply(to_action(d));
  }
  return dep_tree_from_state(sentence, state, root_label_);
}

void DepParser::save(const std::string& path) const {
  save_model(path, config_, vocab_, {{"root_label", root_label_}}, *store_);
}

DepParser DepParser::load(const std::string& path) {
  LoadedModel m = read_model(path);
  if (m.config.task != Task::kDependency)
    throw ModelFormatError("header field 'task': model is not a dependency model");
  DepParser parser(m.config, m.vocab, m.extra.value("root_label", std::string("root")));
  restore_params(*parser.store_, m);
  return parser;
}

std::string most_common_root_label(const std::vector<DepTree>& corpus) {
  std::map<std::string, int> counts;
  std::vector<std::string> order;
  for (const auto& tree : corpus)
    for (std::size_t i = 0; i < tree.heads.size(); ++i)
      if (tree.heads[i] == kRoot && counts[tree.labels[i]]++ == 0) order.push_back(tree.labels[i]);
  std::string best = "root";
  int best_count = 0;
  for (const auto& l : order)
    if (counts[l] > best_count) best = l, best_count = counts[l];
  return best;
}

}  // namespace minparse
