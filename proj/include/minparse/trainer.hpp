#ifndef MINPARSE_TRAINER_HPP
#define MINPARSE_TRAINER_HPP

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "minparse/const_model.hpp"
#include "minparse/dep_model.hpp"
#include "minparse/eval.hpp"
#include "minparse/nn/adadelta.hpp"

namespace minparse {

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;  // summed with dropout, during the epoch
  double loss = 0;        // summed in eval mode after the epoch
  std::optional<double> dev_score;
  bool best = false;
};

struct TrainSummary {
  int examples = 0;
  int skipped = 0;      // not derivable by the oracle
  int exceeds_cap = 0;  // gold needs more consecutive Promotes than allowed
  double initial_loss = 0;
  std::vector<EpochRecord> epochs;
  int best_epoch = -1;
};

/// Copies of parameter values and optimiser state.
struct ParamSnapshot {
  std::vector<Tensor> tensors;

  static ParamSnapshot take(const ParamStore& store) {
    ParamSnapshot s;
    for (const auto& p : store) {
      s.tensors.push_back(p->value);
      s.tensors.push_back(p->mean_sq_grad);
      s.tensors.push_back(p->mean_sq_delta);
    }
    return s;
  }
  void restore(ParamStore& store) const {
    std::size_t i = 0;
    for (auto& p : store) {
      p->value = tensors[i++];
      p->mean_sq_grad = tensors[i++];
      p->mean_sq_delta = tensors[i++];
      p->grad.setZero();
    }
  }
};

inline std::string format_number(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

struct TrainHooks {
  /// Evaluated after every epoch; enables best-epoch selection.
  std::function<double()> dev_score;
  std::string dev_metric = "dev";
  /// Called after every epoch, before best-epoch parameters are restored.
  std::function<void(const EpochRecord&)> on_epoch;
  /// Wall-clock seconds per epoch go here, never into the deterministic log.
  std::ostream* timing = nullptr;
};

/// Minibatch ADADELTA training along oracle paths. Writes deterministic
/// key=value lines to `log`. With a dev scorer, the parameters of the best
/// epoch are restored at the end.
template <typename Parser, typename Tree>
TrainSummary train_parser(Parser& parser, const std::vector<Tree>& corpus, std::ostream& log,
                          const TrainHooks& hooks = {}) {
  const auto& dev_score = hooks.dev_score;
  const auto& dev_metric = hooks.dev_metric;
  const ModelConfig& config = parser.config();
  TrainSummary summary;
  std::vector<typename Parser::Example> examples;
  for (const auto& tree : corpus) {
    auto ex = parser.make_example(tree);
    if (!ex) {
      ++summary.skipped;
      continue;
    }
    if constexpr (requires { ex->exceeds_cap; }) summary.exceeds_cap += ex->exceeds_cap ? 1 : 0;
    examples.push_back(std::move(*ex));
  }
  summary.examples = static_cast<int>(examples.size());

  log << "task=" << to_string(config.task) << '\n';
  config.echo(log);
  log << "train.sentences=" << corpus.size() << '\n'
      << "train.examples=" << summary.examples << '\n'
      << "train.skipped=" << summary.skipped << '\n';
  if (config.task == Task::kConstituency) log << "train.exceeds_promote_cap=" << summary.exceeds_cap << '\n';
  log << "params=" << parser.params().total_size() << '\n';

  auto eval_loss = [&] {
    double total = 0;
    for (const auto& ex : examples) total += parser.loss(ex);
    return total;
  };

  summary.initial_loss = eval_loss();
  log << "epoch=0 loss=" << format_number(summary.initial_loss) << '\n';

  const nn::Adadelta opt{config.rho, config.epsilon, config.l2, config.clip_norm};
  nn::Rng rng(config.seed + 1);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::optional<ParamSnapshot> best;
  double best_score = 0;

  parser.params().zero_grad();
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);
    EpochRecord rec;
    rec.epoch = epoch;
    const auto batch = static_cast<std::size_t>(config.batch_size);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      std::size_t actions = 0;
      for (std::size_t i = start; i < stop; ++i) {
        rec.train_loss += parser.accumulate(examples[order[i]], &rng);
        actions += examples[order[i]].gold.size();
      }
      if (config.average_batch_loss && actions > 0)
        for (auto& p : parser.params()) p->grad /= static_cast<Real>(actions);
      nn::adadelta_update(parser.params(), opt);
    }
    rec.loss = eval_loss();
    log << "epoch=" << epoch << " train_loss=" << format_number(rec.train_loss)
        << " loss=" << format_number(rec.loss);
    if (dev_score) {
      rec.dev_score = dev_score();
      rec.best = !best || *rec.dev_score > best_score;
      if (rec.best) {
        best_score = *rec.dev_score;
        best = ParamSnapshot::take(parser.params());
        summary.best_epoch = epoch;
      }
      log << ' ' << dev_metric << '=' << format_number(*rec.dev_score, 2) << " best=" << (rec.best ? 1 : 0);
    }
    log << '\n';
    if (hooks.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
      *hooks.timing << "epoch=" << epoch << " seconds=" << format_number(elapsed.count(), 2) << '\n';
    }
    summary.epochs.push_back(rec);
    if (hooks.on_epoch) hooks.on_epoch(rec);
  }
  if (best) {
    best->restore(parser.params());
    log << "best_epoch=" << summary.best_epoch << ' ' << dev_metric << '=' << format_number(best_score, 2)
        << '\n';
  }
  return summary;
}

/// Dev metrics used for model selection.
double dev_uas(const DepParser& parser, const std::vector<DepTree>& dev, const DepEvalOptions& options = {});
double dev_f1(const ConstParser& parser, const std::vector<ConstTree>& dev, bool ignore_root = true);

/// Parses sentences independently on up to `threads` threads; the output
/// order always follows the input.
std::vector<DepTree> parse_all(const DepParser& parser, const std::vector<Sentence>& sentences,
                               int threads = 1);
std::vector<ConstTree> parse_all(const ConstParser& parser, const std::vector<Sentence>& sentences,
                                 int threads = 1);

}  // namespace minparse

#endif  // MINPARSE_TRAINER_HPP
