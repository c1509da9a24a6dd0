#ifndef MINPARSE_VOCAB_HPP
#define MINPARSE_VOCAB_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "minparse/treebank.hpp"

namespace minparse {

/// Dense string <-> id map. Ids 0 and 1 are reserved in every family.
class Lexicon {
 public:
  static constexpr int kNone = 0;
  static constexpr int kUnk = 1;

  Lexicon();

  /// Returns kUnk for unseen strings.
  int id(const std::string& s) const;
  bool contains(const std::string& s) const { return index_.count(s) != 0; }
  const std::string& str(int id) const { return items_.at(static_cast<std::size_t>(id)); }
  /// Training count of an entry (0 for the reserved ids).
  int count(int id) const { return counts_.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(items_.size()); }
  /// Number of non-reserved entries.
  int real_size() const { return size() - 2; }

  int add(const std::string& s, int count = 1);

  nlohmann::json to_json() const;
  static Lexicon from_json(const nlohmann::json& j);

  bool operator==(const Lexicon& other) const {
    return items_ == other.items_ && counts_ == other.counts_;
  }

 private:
  std::vector<std::string> items_;
  std::vector<int> counts_;
  std::unordered_map<std::string, int> index_;
};

struct VocabStats {
  int form_types = 0;       // distinct forms seen
  int unk_types = 0;        // forms dropped below the threshold
  long unk_tokens = 0;      // training tokens mapped to UNK
};

struct Vocab {
  Lexicon forms;
  Lexicon tags;
  Lexicon nonterminals;
  Lexicon dep_labels;
  VocabStats stats;

  nlohmann::json to_json() const;
  static Vocab from_json(const nlohmann::json& j);
  /// FNV-1a over the canonical JSON form; stable across save/load.
  std::uint64_t hash() const;

  bool operator==(const Vocab& o) const {
    return forms == o.forms && tags == o.tags && nonterminals == o.nonterminals &&
           dep_labels == o.dep_labels;
  }
};

/// Forms seen fewer than `min_form_count` times map to UNK. Throws
/// std::invalid_argument on an empty corpus.
Vocab build_vocab(const std::vector<DepTree>& corpus, int min_form_count = 2);
Vocab build_vocab(const std::vector<ConstTree>& corpus, int min_form_count = 2);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace minparse

#endif  // MINPARSE_VOCAB_HPP
