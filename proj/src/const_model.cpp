#include "minparse/const_model.hpp"

#include <stdexcept>

#include "minparse/serialize.hpp"

namespace minparse {

namespace {

constexpr int kShiftKind = 0;
constexpr int kAdjLeftKind = 1;
constexpr int kAdjRightKind = 2;
constexpr int kPromoteKind = 3;

}  // namespace

const std::vector<bool>& ConstParser::labeled_kinds() {
  static const std::vector<bool> kinds = {false, false, false, true};
  return kinds;
}

ConstParser::ConstParser(ModelConfig config, Vocab vocab)
    : config_(std::move(config)),
      vocab_(std::move(vocab)),
      store_(std::make_unique<ParamStore>()),
      core_(*store_, (config_.validate(), config_), vocab_),
      label_embed_(&store_->add("embed.nonterminal", vocab_.nonterminals.size(), config_.nonterminal_dim)),
      heads_(*store_, "head", feature_size(), config_.hidden, labeled_kinds(),
             vocab_.nonterminals.real_size(), config_.hierarchical) {
  if (config_.task != Task::kConstituency)
    throw std::invalid_argument("constituency parser needs a const configuration");
}

void ConstParser::init() {
  nn::Rng rng(config_.seed);
  core_.init(rng);
  nn::fill_uniform(label_embed_->value, 0.01, rng);
  heads_.init(rng);
}

ConstAction ConstParser::to_action(const Decision& d) const {
  switch (d.kind) {
    case kShiftKind: return {ConstAction::Kind::kShift, {}};
    case kAdjLeftKind: return {ConstAction::Kind::kAdjLeft, {}};
    case kAdjRightKind: return {ConstAction::Kind::kAdjRight, {}};
    case kPromoteKind: return {ConstAction::Kind::kPromote, vocab_.nonterminals.str(vocab_id(d.label))};
  }
  throw std::out_of_range("bad constituency decision kind");
}

Decision ConstParser::to_decision(const ConstAction& a) const {
  switch (a.kind) {
    case ConstAction::Kind::kShift: return {kShiftKind, -1};
    case ConstAction::Kind::kAdjLeft: return {kAdjLeftKind, -1};
    case ConstAction::Kind::kAdjRight: return {kAdjRightKind, -1};
    case ConstAction::Kind::kPromote:
      if (!vocab_.nonterminals.contains(a.label))
        throw std::out_of_range("unknown nonterminal '" + a.label + "'");
      return {kPromoteKind, label_index(vocab_.nonterminals.id(a.label))};
  }
  throw std::out_of_range("bad constituency action kind");
}

ConstParser::Slots ConstParser::slots(const ConstState& state) const {
  const ConstFeatures f = extract_const(state);
  Slots s;
  s.positions = f.positions;
  for (int k = 0; k < ConstFeatures::kLabels; ++k) {
    const auto label = f.labels[static_cast<std::size_t>(k)];
    s.labels[static_cast<std::size_t>(k)] =
        label.empty() ? Lexicon::kNone : vocab_.nonterminals.id(std::string(label));
  }
  return s;
}

std::optional<ConstParser::Example> ConstParser::make_example(const ConstTree& gold) const {
  std::vector<ConstAction> actions;
  try {
    actions = const_oracle(gold);
  } catch (const TransitionError&) {
    return std::nullopt;
  }
  Example ex;
  ex.exceeds_cap = config_.promote_cap > 0 && max_promote_run(actions) > config_.promote_cap;
  core_.lookup(gold.sentence, vocab_, ex.words, ex.tags);
  ConstState state(gold.sentence.size(), 0);
  for (const auto& a : actions) {
    ex.states.push_back(slots(state));
    try {
      ex.gold.push_back(to_decision(a));
    } catch (const std::out_of_range&) {
      return std::nullopt;
    }
    state = state.apply(a);
  }
  return ex;
}

void ConstParser::features(const Slots& s, const Tensor& encoded, Eigen::Ref<RowVector> row) const {
  const nn::Index pos = ConstFeatures::kPositions * core_.position_size();
  core_.gather(s.positions, ConstFeatures::kFamilies, encoded, row.head(pos));
  const nn::Index d = config_.nonterminal_dim;
  for (int k = 0; k < ConstFeatures::kLabels; ++k)
    row.segment(pos + k * d, d) = label_embed_->value.row(s.labels[static_cast<std::size_t>(k)]);
}

Real ConstParser::run(const Example& ex, nn::Rng* rng, bool backprop) {
  const std::vector<int> words = rng ? drop_rare_words(ex.words, vocab_.forms, config_.word_dropout, *rng) : ex.words;
  NetworkCore::Cache cache;
  const Tensor encoded = core_.encode(words, ex.tags, rng, backprop ? &cache : nullptr);

  const auto m = static_cast<nn::Index>(ex.states.size());
  Tensor feats(m, feature_size());
  for (nn::Index r = 0; r < m; ++r) features(ex.states[static_cast<std::size_t>(r)], encoded, feats.row(r));

  if (!backprop) return heads_.loss(feats, ex.gold, nullptr);

  Tensor d_feats;
  const Real total = heads_.loss(feats, ex.gold, &d_feats);
  const nn::Index pos = ConstFeatures::kPositions * core_.position_size();
  const nn::Index d = config_.nonterminal_dim;
  Tensor d_encoded = Tensor::Zero(encoded.rows(), encoded.cols());
  for (nn::Index r = 0; r < m; ++r) {
    const Slots& s = ex.states[static_cast<std::size_t>(r)];
    core_.scatter(s.positions, ConstFeatures::kFamilies, d_feats.row(r).head(pos), d_encoded);
    for (int k = 0; k < ConstFeatures::kLabels; ++k)
      label_embed_->grad.row(s.labels[static_cast<std::size_t>(k)]) += d_feats.row(r).segment(pos + k * d, d);
  }
  core_.backward(cache, d_encoded);
  return total;
}

Real ConstParser::accumulate(const Example& example, nn::Rng* rng) { return run(example, rng, true); }

Real ConstParser::loss(const Example& example) { return run(example, nullptr, false); }

Tensor ConstParser::encode(const Sentence& sentence) const {
  std::vector<int> words, tags;
  core_.lookup(sentence, vocab_, words, tags);
  return core_.encode(words, tags, nullptr, nullptr);
}

ActionScores ConstParser::score(const Slots& s, const Tensor& encoded) const {
  RowVector row(feature_size());
  features(s, encoded, row);
  return heads_.score(row);
}

ConstTree ConstParser::parse(const Sentence& sentence, std::vector<ConstAction>* actions_out) const {
  const int n = sentence.size();
  if (n == 0) throw std::invalid_argument("cannot parse an empty sentence");
  const Tensor encoded = encode(sentence);
  const int cap = config_.promote_cap > 0 ? config_.promote_cap : 8;
  ConstState state(n, cap);
  std::vector<ConstAction> actions;
  const long limit = n + cap * 2L * n + 2L * n;
  while (!state.complete()) {
    if (static_cast<long>(actions.size()) > limit)
      throw std::runtime_error("decoding did not terminate");
    const ConstLegal legal = state.legal();
    const Decision d = heads_.decide(score(slots(state), encoded),
                                     {legal.shift, legal.adjoin_left, legal.adjoin_right, legal.promote});
    actions.push_back(to_action(d));
    state = state.apply(actions.back());
  }
  if (actions_out) *actions_out = actions;
  return const_replay(sentence, actions, 0);
}

void ConstParser::save(const std::string& path) const {
  save_model(path, config_, vocab_, nlohmann::json::object(), *store_);
}

ConstParser ConstParser::load(const std::string& path) {
  LoadedModel m = read_model(path);
  if (m.config.task != Task::kConstituency)
    throw ModelFormatError("header field 'task': model is not a constituency model");
  ConstParser parser(m.config, m.vocab);
  restore_params(*parser.store_, m);
  return parser;
}

}  // namespace minparse
