#include "doctest.h"
#include "helpers.hpp"
#include "minparse/const_model.hpp"
#include "minparse/dep_model.hpp"
#include "minparse/synthetic.hpp"
#include "minparse/trainer.hpp"

using namespace minparse;

namespace {

ModelConfig tiny(ModelConfig c) {
  c.word_dim = 8;
  c.tag_dim = 4;
  if (c.task == Task::kConstituency) c.nonterminal_dim = 4;
  c.lstm_dim = 8;
  c.hidden = 16;
  c.seed = 5;
  return c;
}

std::vector<Sentence> random_sentences(int count, std::uint64_t seed) {
  SyntheticRng rng(seed);
  std::vector<Sentence> out;
  for (int i = 0; i < count; ++i) out.push_back(random_projective_tree(rng, 1 + static_cast<int>(rng() % 12)).sentence);
  return out;
}

}  // namespace

TEST_CASE("default configurations") {
  const ModelConfig dep = ModelConfig::dependency();
  CHECK(dep.word_dim == 50);
  CHECK(dep.tag_dim == 20);
  CHECK(dep.lstm_dim == 200);
  CHECK(dep.layers == 2);
  CHECK(dep.hidden == 200);
  CHECK(dep.hierarchical);
  CHECK(dep.epochs == 10);
  CHECK(dep.batch_size == 10);
  CHECK(dep.dropout == 0.5);
  CHECK(dep.rho == 0.99);
  CHECK(dep.epsilon == 1e-7);

  const ModelConfig con = ModelConfig::constituency();
  CHECK(con.word_dim == 100);
  CHECK(con.tag_dim == 100);
  CHECK(con.nonterminal_dim == 100);
  CHECK(con.hidden == 1000);
  CHECK(con.l2 == 1e-8);
  CHECK_FALSE(con.hierarchical);

  CHECK(ModelConfig::from_json(dep.to_json()) == dep);
  CHECK(ModelConfig::from_json(con.to_json()) == con);
  CHECK(dep.hash() != con.hash());

  ModelConfig bad = dep;
  bad.layers = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = dep;
  bad.dropout = 1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("classifier input widths follow the encoder size") {
  const Vocab dv = build_vocab(toy_dep_corpus(8, 1));
  const DepParser dep(ModelConfig::dependency(), dv);
  CHECK(dep.feature_size() == 3 * (2 * 200 * 2));

  const Vocab cv = build_vocab(toy_const_corpus(8, 1));
  const ConstParser con(ModelConfig::constituency(), cv);
  CHECK(con.feature_size() == 5 * (2 * 200 * 2) + 8 * 100);

  ModelConfig one = ModelConfig::dependency();
  one.layers = 1;
  one.backward_lstm = false;
  CHECK(DepParser(one, dv).feature_size() == 3 * 200);
}

TEST_CASE("legality mask overrides the scores") {
  nn::Rng rng(1);
  ParamStore store;
  for (bool hierarchical : {true, false}) {
    ActionHeads heads(store, hierarchical ? "h" : "f", 4, 5, {false, true, true}, 3, hierarchical);
    heads.init(rng);
    ActionScores s;
    s.structural = RowVector::Zero(3);
    s.structural << -100, 50, 60;
    s.labels = RowVector::Zero(3);
    s.flat = RowVector::Constant(7, 10.0);
    s.flat(0) = -100;
    const Decision d = heads.decide(s, {true, false, false});
    CHECK(d == Decision{0, -1});
    CHECK_THROWS_AS(heads.decide(s, {false, false, false}), std::logic_error);
  }
}

TEST_CASE("hierarchical and flat decisions agree on consistent score tables") {
  ParamStore store;
  const ActionHeads hier(store, "h", 2, 2, {false, true, true}, 4, true);
  const ActionHeads flat(store, "f", 2, 2, {false, true, true}, 4, false);
  REQUIRE(flat.flat_size() == 1 + 2 * 4);
  nn::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    ActionScores s;
    nn::Tensor<Real> structural(1, 3), labels(1, 4);
    nn::fill_uniform(structural, 3.0, rng);
    nn::fill_uniform(labels, 3.0, rng);
    s.structural = structural.row(0);
    s.labels = labels.row(0);
    // Flat score of (kind, label) = structural + label score, with unlabeled
    // kinds getting the best label score: argmax-consistent with the factored table.
    const Real best_label = s.labels.maxCoeff();
    s.flat = RowVector(flat.flat_size());
    for (int i = 0; i < flat.flat_size(); ++i) {
      const Decision d = flat.from_flat(i);
      CHECK(flat.flat_index(d) == i);
      s.flat(i) = s.structural(d.kind) + (d.label >= 0 ? s.labels(d.label) : best_label);
    }
    for (const auto& legal : std::vector<std::vector<bool>>{{true, true, true}, {true, false, false},
                                                            {false, true, true}, {true, false, true}}) {
      CHECK(hier.decide(s, legal) == flat.decide(s, legal));
    }
  }
}

TEST_CASE("loss is invariant to shifting every score of a head") {
  nn::Rng rng(4);
  ParamStore store;
  ActionHeads heads(store, "h", 3, 4, {false, true}, 3, true);
  heads.init(rng);
  Tensor features(2, 3);
  nn::fill_uniform(features, 1.0, rng);
  const std::vector<Decision> gold = {{0, -1}, {1, 2}};
  const Real before = heads.loss(features, gold, nullptr);
  store.get("h.label.b2").value.array() += 7.5;
  store.get("h.struct.b2").value.array() -= 3.0;
  CHECK(heads.loss(features, gold, nullptr) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("one-word dependency parse") {
  const auto corpus = toy_dep_corpus(16, 2);
  DepParser parser(tiny(ModelConfig::dependency()), build_vocab(corpus), most_common_root_label(corpus));
  parser.init();
  const DepTree t = parser.parse(test::sentence({{"hello", "NN"}}));
  CHECK(t.heads == std::vector<int>{kRoot});
  CHECK(t.labels == std::vector<std::string>{parser.root_label()});
  CHECK(parser.root_label() == "root");
  CHECK_THROWS(parser.parse(Sentence{}));
}

TEST_CASE("random dependency models produce valid trees") {
  const auto corpus = toy_dep_corpus(16, 2);
  DepParser parser(tiny(ModelConfig::dependency()), build_vocab(corpus));
  parser.init();
  for (const auto& s : random_sentences(30, 8)) {
    const DepTree t = parser.parse(s);
    CHECK(t.sentence == s);
    CHECK_NOTHROW(t.validate());
    CHECK(t.projective());
  }
}

TEST_CASE("constituency parses span the sentence and respect the promote cap") {
  const auto corpus = toy_const_corpus(16, 2);
  for (int cap : {0, 1, 3}) {
    ModelConfig c = tiny(ModelConfig::constituency());
    c.promote_cap = cap;
    ConstParser parser(c, build_vocab(corpus));
    parser.init();
    for (const auto& s : random_sentences(30, 9)) {
      std::vector<ConstAction> actions;
      const ConstTree t = parser.parse(s, &actions);
      CHECK(t.sentence == s);
      REQUIRE(t.root);
      CHECK_FALSE(t.root->is_leaf());
      CHECK(t.root->begin == 0);
      CHECK(t.root->end == s.size());
      CHECK(max_promote_run(actions) <= (cap > 0 ? cap : 8));
    }
  }
}

TEST_CASE("examples along the gold path") {
  const auto corpus = toy_dep_corpus(4, 3);
  DepParser parser(tiny(ModelConfig::dependency()), build_vocab(corpus));
  const auto ex = parser.make_example(corpus[0]);
  REQUIRE(ex);
  CHECK(static_cast<int>(ex->gold.size()) == 2 * corpus[0].size() - 1);
  CHECK(ex->states.size() == ex->gold.size());

  DepTree crossing;
  crossing.sentence = test::sentence({{"a", "DT"}, {"b", "NN"}, {"c", "VB"}, {"d", "NN"}});
  crossing.heads = {kRoot, 3, 0, 0};
  crossing.labels = {"root", "det", "obj", "obj"};
  CHECK_FALSE(parser.make_example(crossing));

  CHECK(parser.to_decision(DepAction::shift()) == Decision{0, -1});
  CHECK(parser.to_action(parser.to_decision(DepAction::left("det"))) == DepAction::left("det"));
  CHECK_THROWS_AS(parser.to_decision(DepAction::right("nonsense")), std::out_of_range);
}

TEST_CASE("overfitting one sentence drives the gold path loss to zero") {
  const std::vector<ConstTree> corpus = {test::i_like_sports_tree()};
  ModelConfig c = tiny(ModelConfig::constituency());
  c.dropout = 0;
  c.word_dropout = 0;
  c.min_form_count = 1;
  c.batch_size = 1;
  c.epochs = 2000;
  ConstParser parser(c, build_vocab(corpus, 1));
  parser.init();
  std::ostringstream log;
  const TrainSummary summary = train_parser(parser, corpus, log);
  CHECK(summary.examples == 1);
  CHECK(summary.epochs.back().loss < 1e-3);
  CHECK(summary.epochs.back().loss < summary.initial_loss);

  std::vector<ConstAction> actions;
  const ConstTree parsed = parser.parse(corpus[0].sentence, &actions);
  CHECK(actions == const_oracle(corpus[0]));
  CHECK(parsed == corpus[0]);
}
