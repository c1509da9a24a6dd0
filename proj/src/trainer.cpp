#include "minparse/trainer.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace minparse {

namespace {

template <typename Parser, typename Tree>
std::vector<Tree> parse_parallel(const Parser& parser, const std::vector<Sentence>& sentences, int threads) {
  std::vector<std::optional<Tree>> slots(sentences.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < sentences.size(); i = next++) {
      try {
        slots[i] = parser.parse(sentences[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = sentences.size();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(count, sentences.size()); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<Tree> out;
  out.reserve(sentences.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::vector<DepTree> parse_all(const DepParser& parser, const std::vector<Sentence>& sentences, int threads) {
  return parse_parallel<DepParser, DepTree>(parser, sentences, threads);
}

std::vector<ConstTree> parse_all(const ConstParser& parser, const std::vector<Sentence>& sentences,
                                 int threads) {
  return parse_parallel<ConstParser, ConstTree>(parser, sentences, threads);
}

double dev_uas(const DepParser& parser, const std::vector<DepTree>& dev, const DepEvalOptions& options) {
  std::vector<Sentence> sentences;
  for (const auto& t : dev) sentences.push_back(t.sentence);
  return score_dependencies(dev, parse_all(parser, sentences), options).uas();
}

double dev_f1(const ConstParser& parser, const std::vector<ConstTree>& dev, bool ignore_root) {
  std::vector<Sentence> sentences;
  for (const auto& t : dev) sentences.push_back(t.sentence);
  return score_brackets(dev, parse_all(parser, sentences), ignore_root).f1();
}

}  // namespace minparse
