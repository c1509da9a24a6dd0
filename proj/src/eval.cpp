#include "minparse/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

namespace minparse {

const std::set<std::string>& default_punctuation_tags() {
  static const std::set<std::string> tags = {"``", "''", ",", ".", ":", "PU"};
  return tags;
}

namespace {

void check_aligned(const Sentence& a, const Sentence& b, std::size_t index) {
  if (a.size() != b.size())
    throw EvalError("sentence " + std::to_string(index + 1) + ": token counts differ");
  for (int i = 0; i < a.size(); ++i)
    if (a[i].form != b[i].form)
      throw EvalError("sentence " + std::to_string(index + 1) + ": token " + std::to_string(i + 1) +
                      " differs ('" + a[i].form + "' vs '" + b[i].form + "')");
}

using Bracket = std::tuple<std::string, int, int>;

void collect(const ConstNode& node, std::vector<Bracket>& out) {
  if (node.is_leaf()) return;
  out.emplace_back(node.label, node.begin, node.end);
  for (const auto& child : node.children) collect(*child, out);
}

std::vector<Bracket> brackets(const ConstTree& tree, bool ignore_root) {
  std::vector<Bracket> out;
  collect(*tree.root, out);
  if (ignore_root && !out.empty()) out.erase(out.begin());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DepScore score_dependencies(const std::vector<DepTree>& gold, const std::vector<DepTree>& pred,
                            const DepEvalOptions& options) {
  if (gold.size() != pred.size())
    throw EvalError("corpus misalignment: " + std::to_string(gold.size()) + " gold vs " +
                    std::to_string(pred.size()) + " predicted sentences");
  DepScore score;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    check_aligned(gold[s].sentence, pred[s].sentence, s);
    for (int i = 0; i < gold[s].size(); ++i) {
      if (options.exclude_punct && options.punct_tags.count(gold[s].sentence[i].tag)) continue;
      ++score.scored;
      if (gold[s].heads[i] == pred[s].heads[i]) {
        ++score.correct_heads;
        if (gold[s].labels[i] == pred[s].labels[i]) ++score.correct_labeled;
      }
    }
  }
  if (score.scored == 0) throw EvalError("no scored tokens");
  return score;
}

BracketScore score_brackets(const std::vector<ConstTree>& gold, const std::vector<ConstTree>& pred,
                            bool ignore_root) {
  if (gold.size() != pred.size())
    throw EvalError("corpus misalignment: " + std::to_string(gold.size()) + " gold vs " +
                    std::to_string(pred.size()) + " predicted trees");
  BracketScore score;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    check_aligned(gold[s].sentence, pred[s].sentence, s);
    const auto g = brackets(gold[s], ignore_root);
    const auto p = brackets(pred[s], ignore_root);
    std::vector<Bracket> common;
    std::set_intersection(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(common));
    score.gold += static_cast<long>(g.size());
    score.predicted += static_cast<long>(p.size());
    score.matched += static_cast<long>(common.size());
  }
  return score;
}

std::vector<RecallRow> arc_recall_by_length(const std::vector<DepTree>& gold,
                                            const std::vector<DepTree>& pred, int max_bucket) {
  if (max_bucket < 1) throw std::invalid_argument("max_bucket must be positive");
  if (gold.size() != pred.size()) throw EvalError("corpus misalignment");
  std::vector<RecallRow> rows(static_cast<std::size_t>(max_bucket + 1));
  for (int b = 0; b <= max_bucket; ++b) rows[b].length = b;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    check_aligned(gold[s].sentence, pred[s].sentence, s);
    for (int d = 0; d < gold[s].size(); ++d) {
      const int h = gold[s].heads[d];
      const int bucket = h == kRoot ? 0 : std::min(std::abs(h - d), max_bucket);
      ++rows[bucket].gold;
      if (pred[s].heads[d] == h) ++rows[bucket].correct;
    }
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const RecallRow& r) { return r.gold == 0; }),
             rows.end());
  return rows;
}

void write_recall_csv(std::ostream& out, const std::vector<RecallRow>& rows, int max_bucket) {
  out << "length,gold,correct,recall\n";
  char buf[32];
  for (const auto& r : rows) {
    if (r.length == 0) {
      out << "root";
    } else if (r.length == max_bucket) {
      out << r.length << '+';
    } else {
      out << r.length;
    }
    std::snprintf(buf, sizeof buf, "%.4f", r.recall());
    out << ',' << r.gold << ',' << r.correct << ',' << buf << '\n';
  }
}

void print_scores(std::ostream& out, const DepScore& score) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "UAS=%.2f\nLAS=%.2f\n", score.uas(), score.las());
  out << buf << "scored=" << score.scored << "\ncorrect_heads=" << score.correct_heads
      << "\ncorrect_labeled=" << score.correct_labeled << '\n';
}

void print_scores(std::ostream& out, const BracketScore& score) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "P=%.2f\nR=%.2f\nF1=%.2f\n", score.precision(), score.recall(),
                score.f1());
  out << buf << "matched=" << score.matched << "\ngold=" << score.gold
      << "\npredicted=" << score.predicted << '\n';
}

}  // namespace minparse
