#ifndef MINPARSE_MODEL_HPP
#define MINPARSE_MODEL_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "minparse/features.hpp"
#include "minparse/nn/encoder.hpp"
#include "minparse/nn/mlp.hpp"
#include "minparse/nn/param_store.hpp"
#include "minparse/vocab.hpp"

namespace minparse {

enum class Task { kDependency, kConstituency };

std::string to_string(Task task);
Task parse_task(const std::string& text);

/// Hyperparameters for either parser. The factories return the published
/// settings for each task.
struct ModelConfig {
  Task task = Task::kDependency;

  // embeddings
  int word_dim = 50;
  int tag_dim = 20;
  int nonterminal_dim = 0;
  bool use_tags = true;

  // network
  int lstm_dim = 200;  // per direction
  int layers = 2;
  int hidden = 200;    // per decision head
  bool forward_lstm = true;
  bool backward_lstm = true;
  bool hierarchical = true;

  // training
  int epochs = 10;
  int batch_size = 10;  // sentences
  bool average_batch_loss = false;  // divide the summed batch loss by its action count
  double dropout = 0.5;
  double l2 = 0.0;
  double rho = 0.99;
  double epsilon = 1e-7;
  double clip_norm = 0.0;
  int min_form_count = 2;
  double word_dropout = 0.25;  // alpha in alpha / (alpha + count)
  int promote_cap = 3;
  std::uint64_t seed = 1;

  static ModelConfig dependency();
  static ModelConfig constituency();

  void validate() const;
  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
  /// Hash over the fields that determine parameter shapes and decoding.
  std::uint64_t hash() const;
  /// key=value lines prefixed with "config.".
  void echo(std::ostream& out) const;

  bool operator==(const ModelConfig&) const = default;
};

using Real = double;
using Tensor = nn::Tensor<Real>;
using RowVector = nn::RowVector<Real>;
using ParamStore = nn::ParamStore<Real>;

/// Word/tag embeddings, the Bi-LSTM encoder and the learned NONE vectors.
class NetworkCore {
 public:
  struct Cache {
    std::vector<int> words;
    std::vector<int> tags;
    nn::BiLstmEncoder<Real>::Cache encoder;
  };

  NetworkCore(ParamStore& store, const ModelConfig& config, const Vocab& vocab);

  void init(nn::Rng& rng);

  nn::Index position_size() const { return encoder_.output_size(); }

  /// Vocabulary ids for a sentence (UNK for unseen forms).
  void lookup(const Sentence& sentence, const Vocab& vocab, std::vector<int>& words,
              std::vector<int>& tags) const;

  /// n x position_size() matrix of position vectors. Dropout is active iff
  /// `rng` is given.
  Tensor encode(const std::vector<int>& words, const std::vector<int>& tags, nn::Rng* rng,
                Cache* cache) const;
  void backward(const Cache& cache, const Tensor& d_positions);

  /// Copies position vectors (or the family's NONE vector) into `row`.
  template <std::size_t N>
  void gather(const std::array<int, N>& positions, const std::array<SlotFamily, N>& families,
              const Tensor& encoded, Eigen::Ref<RowVector> row) const {
    const nn::Index d = position_size();
    for (std::size_t k = 0; k < N; ++k) {
      auto dst = row.segment(static_cast<nn::Index>(k) * d, d);
      if (positions[k] == kNoPosition) {
        dst = none(families[k]).value.row(0);
      } else {
        dst = encoded.row(positions[k]);
      }
    }
  }

  template <std::size_t N>
  void scatter(const std::array<int, N>& positions, const std::array<SlotFamily, N>& families,
               const Eigen::Ref<const RowVector>& d_row, Tensor& d_encoded) {
    const nn::Index d = position_size();
    for (std::size_t k = 0; k < N; ++k) {
      const auto src = d_row.segment(static_cast<nn::Index>(k) * d, d);
      if (positions[k] == kNoPosition) {
        none(families[k]).grad.row(0) += src;
      } else {
        d_encoded.row(positions[k]) += src;
      }
    }
  }

 private:
  nn::Param<Real>& none(SlotFamily f) const { return f == SlotFamily::kStack ? none_stack_ : none_queue_; }

  nn::Param<Real>& word_embed_;
  nn::Param<Real>* tag_embed_;
  nn::BiLstmEncoder<Real> encoder_;
  nn::Param<Real>& none_stack_;
  nn::Param<Real>& none_queue_;
};

/// A decision: index into the task's action-kind list plus a label index for
/// labeled kinds (-1 otherwise).
struct Decision {
  int kind = 0;
  int label = -1;
  bool operator==(const Decision&) const = default;
};

struct ActionScores {
  RowVector structural;  // hierarchical mode, one per kind
  RowVector labels;      // hierarchical mode, one per label
  RowVector flat;        // flat mode, one per composite action
};

/// Classifier heads over a task's action space.
///
/// Hierarchical mode uses one ReLU MLP over the action kinds and a second one
/// over labels, evaluated only where a labeled kind is chosen; their losses
/// are summed. Flat mode uses a single MLP over composite actions laid out
/// kind by kind, with labeled kinds expanded to one entry per label.
class ActionHeads {
 public:
  ActionHeads(ParamStore& store, const std::string& name, nn::Index input_size, nn::Index hidden,
              std::vector<bool> labeled_kinds, int label_count, bool hierarchical);

  void init(nn::Rng& rng);

  bool hierarchical() const { return hierarchical_; }
  int kind_count() const { return static_cast<int>(labeled_.size()); }
  int label_count() const { return label_count_; }
  int flat_size() const;
  int flat_index(const Decision& d) const;
  Decision from_flat(int index) const;

  ActionScores score(const Eigen::Ref<const RowVector>& features) const;

  /// Highest-scoring legal decision; ties go to the lowest index.
  Decision decide(const ActionScores& scores, const std::vector<bool>& legal_kinds) const;

  /// Summed NLL over all rows of `features`. When `d_features` is given,
  /// parameter gradients are accumulated and dL/dfeatures is written there.
  Real loss(const Tensor& features, std::span<const Decision> gold, Tensor* d_features);

 private:
  std::vector<bool> labeled_;
  int label_count_;
  bool hierarchical_;
  std::vector<nn::ReluMlp<Real>> mlps_;  // [structural, label] or [flat]
};

/// Word dropout: replaces each word by UNK with probability
/// alpha / (alpha + training count).
std::vector<int> drop_rare_words(const std::vector<int>& words, const Lexicon& forms, double alpha,
                                 nn::Rng& rng);

/// Vocabulary index <-> classifier label index (reserved ids excluded).
inline int label_index(int vocab_id) { return vocab_id - 2; }
inline int vocab_id(int label_index) { return label_index + 2; }

}  // namespace minparse

#endif  // MINPARSE_MODEL_HPP
