#ifndef MINPARSE_EVAL_HPP
#define MINPARSE_EVAL_HPP

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "minparse/treebank.hpp"

namespace minparse {

struct DepScore {
  long correct_heads = 0;
  long correct_labeled = 0;
  long scored = 0;

  double uas() const { return scored ? 100.0 * static_cast<double>(correct_heads) / static_cast<double>(scored) : 0.0; }
  double las() const { return scored ? 100.0 * static_cast<double>(correct_labeled) / static_cast<double>(scored) : 0.0; }
};

struct BracketScore {
  long matched = 0;
  long gold = 0;
  long predicted = 0;

  double precision() const { return predicted ? 100.0 * static_cast<double>(matched) / static_cast<double>(predicted) : 0.0; }
  double recall() const { return gold ? 100.0 * static_cast<double>(matched) / static_cast<double>(gold) : 0.0; }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gold POS tags whose tokens are skipped when punctuation is excluded.
const std::set<std::string>& default_punctuation_tags();

struct DepEvalOptions {
  bool exclude_punct = true;
  std::set<std::string> punct_tags = default_punctuation_tags();
};

/// Attachment scores. Throws EvalError on misaligned corpora or when every
/// token is excluded.
DepScore score_dependencies(const std::vector<DepTree>& gold, const std::vector<DepTree>& pred,
                            const DepEvalOptions& options = {});

/// Labeled bracket scores over internal nodes (the POS layer is never a
/// bracket). Duplicates count with multiplicity; the root bracket is skipped
/// when `ignore_root`. No punctuation re-spanning is applied.
BracketScore score_brackets(const std::vector<ConstTree>& gold, const std::vector<ConstTree>& pred,
                            bool ignore_root = true);

struct RecallRow {
  int length = 0;  // 0 stands for arcs from ROOT
  long gold = 0;
  long correct = 0;
  double recall() const { return gold ? static_cast<double>(correct) / static_cast<double>(gold) : 0.0; }
};

/// Unlabeled recall of gold arcs bucketed by |head - dependent|. Lengths at
/// or above `max_bucket` share the last bucket; ROOT arcs come first as
/// length 0. Empty buckets are omitted. Punctuation is not excluded.
std::vector<RecallRow> arc_recall_by_length(const std::vector<DepTree>& gold,
                                            const std::vector<DepTree>& pred, int max_bucket = 10);

/// CSV with header "length,gold,correct,recall"; the ROOT row is labeled "root"
/// and the merged last bucket "N+".
void write_recall_csv(std::ostream& out, const std::vector<RecallRow>& rows, int max_bucket);

void print_scores(std::ostream& out, const DepScore& score);
void print_scores(std::ostream& out, const BracketScore& score);

}  // namespace minparse

#endif  // MINPARSE_EVAL_HPP
