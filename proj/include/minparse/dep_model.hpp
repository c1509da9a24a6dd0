#ifndef MINPARSE_DEP_MODEL_HPP
#define MINPARSE_DEP_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "minparse/dep_transitions.hpp"
#include "minparse/model.hpp"

namespace minparse {

/// Greedy arc-standard parser over Bi-LSTM features at s1, s0 and q0.
class DepParser {
 public:
  /// Classifier kinds, in order: Shift, ReduceLeft, ReduceRight.
  static const std::vector<bool>& labeled_kinds();

  /// Teacher-forcing data for one sentence: feature slots of every state on
  /// the gold path together with the gold decision taken there.
  struct Example {
    std::vector<int> words;
    std::vector<int> tags;
    std::vector<DepFeatures> states;
    std::vector<Decision> gold;
  };

  DepParser(ModelConfig config, Vocab vocab, std::string root_label = "root");
  DepParser(DepParser&&) = default;

  /// Random initialisation from config().seed.
  void init();

  const ModelConfig& config() const { return config_; }
  const Vocab& vocab() const { return vocab_; }
  const std::string& root_label() const { return root_label_; }
  ParamStore& params() { return *store_; }
  const ParamStore& params() const { return *store_; }
  const ActionHeads& heads() const { return heads_; }
  nn::Index feature_size() const { return DepFeatures::kSlots * core_.position_size(); }

  /// nullopt when the tree is not derivable (non-projective).
  std::optional<Example> make_example(const DepTree& gold) const;

  /// Forward and backward along the gold path, accumulating gradients.
  /// Dropout and word dropout are applied iff `rng` is given.
  Real accumulate(const Example& example, nn::Rng* rng);
  /// Loss without dropout or gradient accumulation.
  Real loss(const Example& example);

  Tensor encode(const Sentence& sentence) const;
  ActionScores score(const DepState& state, const Tensor& encoded) const;
  DepTree parse(const Sentence& sentence) const;

  DepAction to_action(const Decision& d) const;
  Decision to_decision(const DepAction& a) const;

  void save(const std::string& path) const;
  static DepParser load(const std::string& path);

 private:
  Real run(const Example& example, nn::Rng* rng, bool backprop);

  ModelConfig config_;
  Vocab vocab_;
  std::string root_label_;
  std::unique_ptr<ParamStore> store_;
  NetworkCore core_;
  ActionHeads heads_;
};

/// Most frequent label on ROOT arcs ("root" for an empty corpus).
std::string most_common_root_label(const std::vector<DepTree>& corpus);

}  // namespace minparse

#endif  // MINPARSE_DEP_MODEL_HPP
