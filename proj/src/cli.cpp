#include "minparse/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "minparse/const_model.hpp"
#include "minparse/dep_model.hpp"
#include "minparse/diagnostics.hpp"
#include "minparse/eval.hpp"
#include "minparse/head_rules.hpp"
#include "minparse/serialize.hpp"
#include "minparse/trainer.hpp"

#ifndef MINPARSE_DEFAULT_HEAD_RULES
#define MINPARSE_DEFAULT_HEAD_RULES "data/head_rules.txt"
#endif

namespace minparse {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// options

struct Overrides {
  std::optional<int> word_dim, tag_dim, nonterminal_dim, lstm_dim, layers, hidden, epochs, batch_size,
      min_form_count, promote_cap;
  std::optional<bool> use_tags, forward_lstm, backward_lstm, hierarchical, average_batch_loss;
  std::optional<double> dropout, l2, rho, epsilon, clip_norm, word_dropout;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App& app) {
    app.add_option("--word-dim", word_dim, "Word embedding size");
    app.add_option("--tag-dim", tag_dim, "POS tag embedding size");
    app.add_option("--nonterminal-dim", nonterminal_dim, "Nonterminal label embedding size (const)");
    app.add_option("--lstm-dim", lstm_dim, "LSTM units per direction");
    app.add_option("--layers", layers, "Bi-LSTM layers (1 or 2)");
    app.add_option("--hidden", hidden, "Hidden units per decision head");
    app.add_option("--epochs", epochs, "Training epochs");
    app.add_option("--batch-size", batch_size, "Sentences per update");
    app.add_option("--min-form-count", min_form_count, "Forms seen fewer times map to UNK");
    app.add_option("--promote-cap", promote_cap, "Consecutive Promotes allowed per item (0: decoding masks at 8)");
    app.add_option("--use-tags", use_tags, "Use POS tag embeddings");
    app.add_option("--forward-lstm", forward_lstm, "Use the left-to-right LSTMs");
    app.add_option("--backward-lstm", backward_lstm, "Use the right-to-left LSTMs");
    app.add_option("--hierarchical", hierarchical, "Separate structural and label heads");
    app.add_option("--average-batch-loss", average_batch_loss, "Average instead of sum the batch loss");
    app.add_option("--dropout", dropout, "Dropout rate on LSTM outputs");
    app.add_option("--l2", l2, "L2 penalty");
    app.add_option("--rho", rho, "ADADELTA decay");
    app.add_option("--epsilon", epsilon, "ADADELTA epsilon");
    app.add_option("--clip-norm", clip_norm, "Global gradient norm clip (0: off)");
    app.add_option("--word-dropout", word_dropout, "Word dropout alpha");
    app.add_option("--seed", seed, "Random seed");
  }

  ModelConfig apply(ModelConfig c) const {
    auto set = [](auto& field, const auto& value) {
      if (value) field = *value;
    };
    set(c.word_dim, word_dim);
    set(c.tag_dim, tag_dim);
    set(c.nonterminal_dim, nonterminal_dim);
    set(c.lstm_dim, lstm_dim);
    set(c.layers, layers);
    set(c.hidden, hidden);
    set(c.epochs, epochs);
    set(c.batch_size, batch_size);
    set(c.min_form_count, min_form_count);
    set(c.promote_cap, promote_cap);
    set(c.use_tags, use_tags);
    set(c.forward_lstm, forward_lstm);
    set(c.backward_lstm, backward_lstm);
    set(c.hierarchical, hierarchical);
    set(c.average_batch_loss, average_batch_loss);
    set(c.dropout, dropout);
    set(c.l2, l2);
    set(c.rho, rho);
    set(c.epsilon, epsilon);
    set(c.clip_norm, clip_norm);
    set(c.word_dropout, word_dropout);
    set(c.seed, seed);
    return c;
  }
};

Task task_option(const std::string& text) {
  try {
    return parse_task(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Reads a flat key=value file into "--key value" arguments.
std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(number) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") throw UsageError(path + ":" + std::to_string(number) + ": nested config files are not supported");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// Config file entries go in front of the command-line flags; with every
// option taking its last value, flags win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> out = {args[0]};
  const auto from_file = config_file_args(*path);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

template <typename Fn>
auto read_file(const std::string& path, Fn reader) {
  auto in = open_input(path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<ConstTree> read_const_corpus(const std::string& path, const HeadRules& rules) {
  auto trees = read_file(path, [](std::istream& in) { return read_brackets(in); });
  for (auto& t : trees) t = assign_heads(t, rules);
  return trees;
}

HeadRules load_rules(const std::string& path) {
  try {
    return HeadRules::load(path);
  } catch (const std::exception& e) {
    throw DataError(std::string("head rules: ") + e.what());
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw DataError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string task, train, dev, model, log, head_rules = MINPARSE_DEFAULT_HEAD_RULES;
  int precision = 64;
  bool exclude_punct = true;
  bool ignore_root = true;
  double max_skip_rate = 0.05;
  Overrides overrides;
};

void log_overrides(std::ostream& log, const ModelConfig& defaults, const ModelConfig& config) {
  const auto a = defaults.to_json();
  const auto b = config.to_json();
  for (const auto& [key, value] : b.items())
    if (a.at(key) != value) log << "override." << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

void warn_skips(std::ostream& err, const TrainSummary& s, double max_rate) {
  const int total = s.examples + s.skipped;
  if (total > 0 && static_cast<double>(s.skipped) / total > max_rate)
    err << "warning: " << s.skipped << " of " << total << " training sentences are not derivable\n";
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  if (a.precision != 64) throw UsageError("training supports --precision 64 only");
  const Task task = task_option(a.task);
  const ModelConfig defaults = task == Task::kDependency ? ModelConfig::dependency() : ModelConfig::constituency();
  const ModelConfig config = a.overrides.apply(defaults);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Output log_out(a.log, out);
  std::ostream& log = *log_out;
  TrainHooks hooks;
  hooks.timing = &err;
  const std::string final_path = a.model + ".final";

  auto finish = [&](auto& parser, const TrainSummary& summary) {
    warn_skips(err, summary, a.max_skip_rate);
    parser.save(a.model);
    log << "model=" << a.model << '\n';
  };

  if (task == Task::kDependency) {
    const auto train = read_file(a.train, [](std::istream& in) { return read_conll(in); });
    if (train.empty()) throw DataError("training corpus '" + a.train + "' is empty");
    std::vector<DepTree> dev;
    if (!a.dev.empty()) dev = read_file(a.dev, [](std::istream& in) { return read_conll(in); });
    Vocab vocab = build_vocab(train, config.min_form_count);
    if (vocab.dep_labels.real_size() == 0) throw DataError("training corpus has no dependency labels");
    DepParser parser(config, vocab, most_common_root_label(train));
    parser.init();
    log_overrides(log, defaults, config);
    log << "vocab.forms=" << vocab.forms.real_size() << " vocab.tags=" << vocab.tags.real_size()
        << " vocab.labels=" << vocab.dep_labels.real_size() << " vocab.unk_types=" << vocab.stats.unk_types << '\n';
    DepEvalOptions eval_options;
    eval_options.exclude_punct = a.exclude_punct;
    if (!dev.empty()) {
      hooks.dev_metric = "dev_uas";
      hooks.dev_score = [&] { return dev_uas(parser, dev, eval_options); };
    }
    hooks.on_epoch = [&](const EpochRecord& r) {
      if (r.epoch == config.epochs) parser.save(final_path);
    };
    finish(parser, train_parser(parser, train, log, hooks));
  } else {
    const HeadRules rules = load_rules(a.head_rules);
    const auto train = read_const_corpus(a.train, rules);
    if (train.empty()) throw DataError("training corpus '" + a.train + "' is empty");
    std::vector<ConstTree> dev;
    if (!a.dev.empty()) dev = read_const_corpus(a.dev, rules);
    Vocab vocab = build_vocab(train, config.min_form_count);
    if (vocab.nonterminals.real_size() == 0) throw DataError("training corpus has no nonterminals");
    ConstParser parser(config, vocab);
    parser.init();
    log_overrides(log, defaults, config);
    log << "vocab.forms=" << vocab.forms.real_size() << " vocab.tags=" << vocab.tags.real_size()
        << " vocab.nonterminals=" << vocab.nonterminals.real_size() << " vocab.unk_types=" << vocab.stats.unk_types
        << '\n';
    if (!dev.empty()) {
      hooks.dev_metric = "dev_f1";
      hooks.dev_score = [&] { return dev_f1(parser, dev, a.ignore_root); };
    }
    hooks.on_epoch = [&](const EpochRecord& r) {
      if (r.epoch == config.epochs) parser.save(final_path);
    };
    const TrainSummary summary = train_parser(parser, train, log, hooks);
    if (summary.exceeds_cap > 0)
      err << "warning: " << summary.exceeds_cap << " gold derivations exceed the promote cap of "
          << config.promote_cap << "\n";
    finish(parser, summary);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// parse

struct ParseArgs {
  std::string model, input, output, task, format = "conll";
  int threads = 1;
};

std::vector<Sentence> read_sentences(const std::string& path, const std::string& format) {
  if (format == "conll") return read_file(path, [](std::istream& in) { return read_conll_sentences(in); });
  if (format == "tagged") return read_file(path, [](std::istream& in) { return read_tagged_text(in); });
  throw UsageError("unknown input format '" + format + "' (expected conll or tagged)");
}

Task model_task(const std::string& path) {
  try {
    return peek_task(path);
  } catch (const std::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

template <typename Parser>
Parser load_parser(const std::string& path) {
  try {
    return Parser::load(path);
  } catch (const std::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void check_task(const std::string& requested, Task actual) {
  if (!requested.empty() && task_option(requested) != actual)
    throw DataError("task mismatch: model is a " + to_string(actual) + " model, but --task " + requested +
                    " was requested");
}

int cmd_parse(const ParseArgs& a, std::ostream& out) {
  if (a.threads < 1) throw UsageError("--threads must be at least 1");
  const Task task = model_task(a.model);
  check_task(a.task, task);
  const auto sentences = read_sentences(a.input, a.format);
  Output output(a.output, out);
  if (task == Task::kDependency) {
    const auto parser = load_parser<DepParser>(a.model);
    write_conll(*output, parse_all(parser, sentences, a.threads));
  } else {
    const auto parser = load_parser<ConstParser>(a.model);
    write_brackets(*output, parse_all(parser, sentences, a.threads));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string task, gold, pred, model, recall_csv, head_rules = MINPARSE_DEFAULT_HEAD_RULES;
  bool exclude_punct = true;
  bool ignore_root = true;
  int max_bucket = 10;
  int threads = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.pred.empty() == a.model.empty()) throw UsageError("give exactly one of --pred and --model");
  if (a.threads < 1) throw UsageError("--threads must be at least 1");
  if (a.max_bucket < 2) throw UsageError("--max-bucket must be at least 2");
  Task task;
  if (!a.model.empty()) {
    task = model_task(a.model);
    check_task(a.task, task);
  } else {
    if (a.task.empty()) throw UsageError("--task is required with --pred");
    task = task_option(a.task);
  }
  auto sentences_of = [](const auto& trees) {
    std::vector<Sentence> s;
    for (const auto& t : trees) s.push_back(t.sentence);
    return s;
  };
  try {
    if (task == Task::kDependency) {
      const auto gold = read_file(a.gold, [](std::istream& in) { return read_conll(in); });
      std::vector<DepTree> pred;
      if (!a.pred.empty()) {
        pred = read_file(a.pred, [](std::istream& in) { return read_conll(in); });
      } else {
        pred = parse_all(load_parser<DepParser>(a.model), sentences_of(gold), a.threads);
      }
      DepEvalOptions options;
      options.exclude_punct = a.exclude_punct;
      print_scores(out, score_dependencies(gold, pred, options));
      if (!a.recall_csv.empty()) {
        Output csv(a.recall_csv, out);
        write_recall_csv(*csv, arc_recall_by_length(gold, pred, a.max_bucket), a.max_bucket);
      }
    } else {
      if (!a.recall_csv.empty()) throw UsageError("--recall-by-length applies to dependency evaluation");
      // Brackets are compared as read; heads are only needed for parsing.
      const auto gold = read_file(a.gold, [](std::istream& in) { return read_brackets(in); });
      std::vector<ConstTree> pred;
      if (!a.pred.empty()) {
        pred = read_file(a.pred, [](std::istream& in) { return read_brackets(in); });
      } else {
        pred = parse_all(load_parser<ConstParser>(a.model), sentences_of(gold), a.threads);
      }
      print_scores(out, score_brackets(gold, pred, a.ignore_root));
    }
  } catch (const EvalError& e) {
    throw DataError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string task, input, output, head_rules = MINPARSE_DEFAULT_HEAD_RULES;
  bool replay = false;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const Task task = task_option(a.task);
  Output output(a.output, out);
  int skipped = 0, mismatches = 0, total = 0;
  if (task == Task::kDependency) {
    const auto trees = read_file(a.input, [](std::istream& in) { return read_conll(in); });
    for (std::size_t i = 0; i < trees.size(); ++i) {
      ++total;
      std::vector<DepAction> actions;
      try {
        actions = dep_oracle(trees[i]);
      } catch (const TransitionError& e) {
        err << "skipped sentence " << i + 1 << ": " << e.what() << '\n';
        ++skipped;
        continue;
      }
      if (!a.replay) {
        write_dep_actions(*output, actions);
        continue;
      }
      const auto root = std::find(trees[i].heads.begin(), trees[i].heads.end(), kRoot) - trees[i].heads.begin();
      const DepTree back = dep_replay(trees[i].sentence, actions, trees[i].labels[static_cast<std::size_t>(root)]);
      if (!(back == trees[i])) {
        err << "mismatch in sentence " << i + 1 << '\n';
        ++mismatches;
      }
    }
  } else {
    const auto trees = read_const_corpus(a.input, load_rules(a.head_rules));
    for (std::size_t i = 0; i < trees.size(); ++i) {
      ++total;
      std::vector<ConstAction> actions;
      try {
        actions = const_oracle(trees[i]);
      } catch (const TransitionError& e) {
        err << "skipped sentence " << i + 1 << ": " << e.what() << '\n';
        ++skipped;
        continue;
      }
      if (!a.replay) {
        write_const_actions(*output, actions);
        continue;
      }
      const ConstTree back = const_replay(trees[i].sentence, actions, 0);
      if (!(back == trees[i]) || !same_heads(*back.root, *trees[i].root)) {
        err << "mismatch in sentence " << i + 1 << '\n';
        ++mismatches;
      }
    }
  }
  if (a.replay) {
    *output << "sentences=" << total << " skipped=" << skipped << '\n' << mismatches << " mismatches\n";
    if (mismatches > 0) throw VerificationFailure("oracle replay produced mismatches");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gradcheck

struct GradCheckArgs {
  std::string task = "all";
  int precision = 64;
  int samples = 500;
  std::uint64_t seed = 3;
  std::optional<double> tolerance;
  std::optional<std::string> corrupt;
};

int cmd_gradcheck(const GradCheckArgs& a, std::ostream& out) {
  if (a.task != "all" && a.task != "dep" && a.task != "const" && a.task != "layers")
    throw UsageError("--task must be one of all, dep, const, layers");
  bool passed = true;
  std::vector<std::string> failing;
  auto report = [&](const std::string& what, const nn::GradCheckReport& r, double tolerance) {
    out << what << ' ' << r.summary() << " tolerance=" << tolerance << (r.passed() ? " PASS" : " FAIL") << '\n';
    for (const auto& f : r.failures) {
      if (std::find(failing.begin(), failing.end(), f.param) == failing.end()) failing.push_back(f.param);
    }
    passed = passed && r.passed();
  };

  if (a.precision == 32) {
    if (a.task == "dep" || a.task == "const")
      throw UsageError("32-bit mode checks the layers only (--task layers or all)");
    nn::GradCheckOptions o;
    o.step = 1e-2;
    o.tolerance = a.tolerance.value_or(1e-2);
    o.floor = 1e-3;
    o.seed = a.seed;
    for (const auto& l : check_layer_gradients<float>(o, a.corrupt)) report("layer." + l.layer + ".f32", l.report, o.tolerance);
  } else if (a.precision == 64) {
    if (a.task == "all" || a.task == "layers") {
      nn::GradCheckOptions o;
      o.tolerance = a.tolerance.value_or(1e-6);
      o.seed = a.seed;
      for (const auto& l : check_layer_gradients<double>(o, a.corrupt)) report("layer." + l.layer, l.report, o.tolerance);
    }
    for (const Task t : {Task::kDependency, Task::kConstituency}) {
      if (a.task != "all" && a.task != to_string(t)) continue;
      GradCheckSetup setup;
      setup.options.tolerance = a.tolerance.value_or(1e-4);
      setup.options.floor = 1e-4;
      setup.options.total_samples = a.samples;
      setup.seed = a.seed;
      setup.corrupt_param = a.corrupt;
      try {
        report("model." + to_string(t), check_parser_gradients(t, setup), setup.options.tolerance);
      } catch (const std::invalid_argument& e) {
        // an unknown corrupt target for this model
        if (a.task != "all") throw UsageError(e.what());
      }
    }
  } else {
    throw UsageError("--precision must be 32 or 64");
  }
  for (const auto& p : failing) out << "failed parameter: " << p << '\n';
  if (!passed) throw VerificationFailure("gradient check failed for " + std::to_string(failing.size()) + " parameter(s)");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy transition-based dependency and constituency parsing with Bi-LSTM features",
               "minparse"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  const char* config_help = "Flat key=value file with option defaults (flags take precedence)";

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a parser and write the best-dev model");
  train_cmd->add_option("--config", config_path, config_help);
  train_cmd->add_option("--task", train.task, "dep or const")->required();
  train_cmd->add_option("--train", train.train, "Training treebank (CoNLL or brackets)")->required();
  train_cmd->add_option("--dev", train.dev, "Development treebank for model selection");
  train_cmd->add_option("--model", train.model, "Output model path (final epoch also at PATH.final)")->required();
  train_cmd->add_option("--log", train.log, "Training log path (default: stdout)");
  train_cmd->add_option("--head-rules", train.head_rules, "Head rules for constituency trees");
  train_cmd->add_option("--precision", train.precision, "Floating point width (64)");
  train_cmd->add_option("--exclude-punct", train.exclude_punct, "Skip punctuation in dev UAS");
  train_cmd->add_option("--ignore-root", train.ignore_root, "Skip the root bracket in dev F1");
  train_cmd->add_option("--max-skip-rate", train.max_skip_rate, "Warn above this non-derivable rate");
  train.overrides.add_to(*train_cmd);

  ParseArgs parse;
  auto* parse_cmd = app.add_subcommand("parse", "Parse sentences with a trained model");
  parse_cmd->add_option("--config", config_path, config_help);
  parse_cmd->add_option("--model", parse.model, "Model file")->required();
  parse_cmd->add_option("--input", parse.input, "Input sentences")->required();
  parse_cmd->add_option("--output", parse.output, "Output path (default: stdout)");
  parse_cmd->add_option("--format", parse.format, "Input format: conll (heads may be blank) or tagged");
  parse_cmd->add_option("--task", parse.task, "Expected model task (dep or const)");
  parse_cmd->add_option("--threads", parse.threads, "Sentences parsed in parallel");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted trees against gold trees");
  eval_cmd->add_option("--config", config_path, config_help);
  eval_cmd->add_option("--task", eval.task, "dep or const");
  eval_cmd->add_option("--gold", eval.gold, "Gold treebank")->required();
  eval_cmd->add_option("--pred", eval.pred, "Predicted treebank");
  eval_cmd->add_option("--model", eval.model, "Parse the gold sentences with this model instead of --pred");
  eval_cmd->add_option("--exclude-punct", eval.exclude_punct, "Skip punctuation tokens in UAS/LAS");
  eval_cmd->add_option("--ignore-root", eval.ignore_root, "Skip the root bracket");
  eval_cmd->add_option("--recall-by-length", eval.recall_csv, "Write arc recall by length as CSV");
  eval_cmd->add_option("--max-bucket", eval.max_bucket, "Arc lengths from this value share one bucket");
  eval_cmd->add_option("--threads", eval.threads, "Sentences parsed in parallel (with --model)");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Dump or verify gold action sequences");
  oracle_cmd->add_option("--config", config_path, config_help);
  oracle_cmd->add_option("--task", oracle.task, "dep or const")->required();
  oracle_cmd->add_option("--input", oracle.input, "Gold treebank")->required();
  oracle_cmd->add_option("--output", oracle.output, "Output path (default: stdout)");
  oracle_cmd->add_option("--head-rules", oracle.head_rules, "Head rules for constituency trees");
  oracle_cmd->add_flag("--replay", oracle.replay, "Replay each sequence and count mismatches");

  GradCheckArgs grad;
  auto* grad_cmd = app.add_subcommand("gradcheck", "Finite-difference check of all gradients");
  grad_cmd->add_option("--config", config_path, config_help);
  grad_cmd->add_option("--task", grad.task, "all, layers, dep or const");
  grad_cmd->add_option("--precision", grad.precision, "64, or 32 for layer checks in single precision");
  grad_cmd->add_option("--samples", grad.samples, "Coordinates per model check");
  grad_cmd->add_option("--seed", grad.seed, "Random seed");
  grad_cmd->add_option("--tolerance", grad.tolerance, "Override the relative error tolerance");
  grad_cmd->add_option("--corrupt", grad.corrupt, "Test hook: corrupt the gradient of this parameter");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*train_cmd) return cmd_train(train, out, err);
    if (*parse_cmd) return cmd_parse(parse, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*oracle_cmd) return cmd_oracle(oracle, out, err);
    if (*grad_cmd) return cmd_gradcheck(grad, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "run with " << (sub == &app ? "" : sub->get_name() + " ") << "--help for usage\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace minparse
