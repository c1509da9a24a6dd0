#ifndef MINPARSE_CONST_MODEL_HPP
#define MINPARSE_CONST_MODEL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "minparse/const_transitions.hpp"
#include "minparse/model.hpp"

namespace minparse {

/// Greedy shift-promote-adjoin parser over Bi-LSTM features at s1, s0, q0,
/// the leftmost words of s1 and s0, and eight nonterminal label slots.
class ConstParser {
 public:
  /// Classifier kinds, in order: Shift, AdjoinLeft, AdjoinRight, Promote.
  static const std::vector<bool>& labeled_kinds();

  struct Slots {
    std::array<int, ConstFeatures::kPositions> positions{};
    std::array<int, ConstFeatures::kLabels> labels{};  // nonterminal vocabulary ids
  };

  struct Example {
    std::vector<int> words;
    std::vector<int> tags;
    std::vector<Slots> states;
    std::vector<Decision> gold;
    /// The gold sequence needs more consecutive Promotes than the cap allows.
    bool exceeds_cap = false;
  };

  ConstParser(ModelConfig config, Vocab vocab);
  ConstParser(ConstParser&&) = default;

  void init();

  const ModelConfig& config() const { return config_; }
  const Vocab& vocab() const { return vocab_; }
  ParamStore& params() { return *store_; }
  const ParamStore& params() const { return *store_; }
  const ActionHeads& heads() const { return heads_; }
  nn::Index feature_size() const {
    return ConstFeatures::kPositions * core_.position_size() +
           ConstFeatures::kLabels * static_cast<nn::Index>(config_.nonterminal_dim);
  }

  /// nullopt when the tree has no head annotation or uses unseen labels.
  std::optional<Example> make_example(const ConstTree& gold) const;

  Real accumulate(const Example& example, nn::Rng* rng);
  Real loss(const Example& example);

  Slots slots(const ConstState& state) const;
  Tensor encode(const Sentence& sentence) const;
  ActionScores score(const Slots& slots, const Tensor& encoded) const;
  /// Decodes until a complete constituent remains; also returns the actions.
  ConstTree parse(const Sentence& sentence, std::vector<ConstAction>* actions = nullptr) const;

  ConstAction to_action(const Decision& d) const;
  Decision to_decision(const ConstAction& a) const;

  void save(const std::string& path) const;
  static ConstParser load(const std::string& path);

 private:
  Real run(const Example& example, nn::Rng* rng, bool backprop);
  void features(const Slots& slots, const Tensor& encoded, Eigen::Ref<RowVector> row) const;

  ModelConfig config_;
  Vocab vocab_;
  std::unique_ptr<ParamStore> store_;
  NetworkCore core_;
  nn::Param<Real>* label_embed_;
  ActionHeads heads_;
};

}  // namespace minparse

#endif  // MINPARSE_CONST_MODEL_HPP
