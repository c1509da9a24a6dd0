#include "minparse/vocab.hpp"

#include <map>
#include <stdexcept>

namespace minparse {

Lexicon::Lexicon() {
  add("<NONE>", 0);
  add("<UNK>", 0);
}

int Lexicon::id(const std::string& s) const {
  const auto it = index_.find(s);
  return it == index_.end() ? kUnk : it->second;
}

int Lexicon::add(const std::string& s, int count) {
  if (const auto it = index_.find(s); it != index_.end()) {
    counts_[static_cast<std::size_t>(it->second)] += count;
    return it->second;
  }
  const int id = size();
  items_.push_back(s);
  counts_.push_back(count);
  index_.emplace(s, id);
  return id;
}

nlohmann::json Lexicon::to_json() const {
  // Reserved entries are implicit.
  nlohmann::json items = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::array();
  for (int i = 2; i < size(); ++i) {
    items.push_back(items_[i]);
    counts.push_back(counts_[i]);
  }
  return {{"items", items}, {"counts", counts}};
}

Lexicon Lexicon::from_json(const nlohmann::json& j) {
  Lexicon lex;
  const auto& items = j.at("items");
  const auto& counts = j.at("counts");
  if (items.size() != counts.size()) throw std::runtime_error("lexicon items/counts length mismatch");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto s = items[i].get<std::string>();
    if (lex.contains(s)) throw std::runtime_error("duplicate lexicon entry '" + s + "'");
    lex.add(s, counts[i].get<int>());
  }
  return lex;
}

nlohmann::json Vocab::to_json() const {
  return {{"forms", forms.to_json()},
          {"tags", tags.to_json()},
          {"nonterminals", nonterminals.to_json()},
          {"dep_labels", dep_labels.to_json()}};
}

Vocab Vocab::from_json(const nlohmann::json& j) {
  Vocab v;
  v.forms = Lexicon::from_json(j.at("forms"));
  v.tags = Lexicon::from_json(j.at("tags"));
  v.nonterminals = Lexicon::from_json(j.at("nonterminals"));
  v.dep_labels = Lexicon::from_json(j.at("dep_labels"));
  return v;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Vocab::hash() const { return fnv1a(to_json().dump()); }

namespace {

// Keeps first-occurrence order so ids do not depend on hash iteration.
class FormCounter {
 public:
  void add(const std::string& form) {
    auto [it, fresh] = index_.emplace(form, order_.size());
    if (fresh) order_.push_back({form, 0});
    ++order_[it->second].second;
  }

  void finish(Vocab& vocab, int min_count) const {
    vocab.stats.form_types = static_cast<int>(order_.size());
    for (const auto& [form, count] : order_) {
      if (count >= min_count) {
        vocab.forms.add(form, count);
      } else {
        ++vocab.stats.unk_types;
        vocab.stats.unk_tokens += count;
      }
    }
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, int>> order_;
};

void add_nonterminals(const ConstNode& node, Lexicon& lex) {
  if (node.is_leaf()) return;
  lex.add(node.label);
  for (const auto& child : node.children) add_nonterminals(*child, lex);
}

}  // namespace

Vocab build_vocab(const std::vector<DepTree>& corpus, int min_form_count) {
  if (corpus.empty()) throw std::invalid_argument("cannot build a vocabulary from an empty corpus");
  Vocab vocab;
  FormCounter forms;
  for (const auto& tree : corpus) {
    for (int i = 0; i < tree.size(); ++i) {
      forms.add(tree.sentence[i].form);
      vocab.tags.add(tree.sentence[i].tag);
      vocab.dep_labels.add(tree.labels[i]);
    }
  }
  forms.finish(vocab, min_form_count);
  return vocab;
}

Vocab build_vocab(const std::vector<ConstTree>& corpus, int min_form_count) {
  if (corpus.empty()) throw std::invalid_argument("cannot build a vocabulary from an empty corpus");
  Vocab vocab;
  FormCounter forms;
  for (const auto& tree : corpus) {
    for (const auto& tok : tree.sentence.tokens) {
      forms.add(tok.form);
      vocab.tags.add(tok.tag);
    }
    add_nonterminals(*tree.root, vocab.nonterminals);
  }
  forms.finish(vocab, min_form_count);
  return vocab;
}

}  // namespace minparse
