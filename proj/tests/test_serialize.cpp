#include <cstring>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "helpers.hpp"
#include "minparse/const_model.hpp"
#include "minparse/dep_model.hpp"
#include "minparse/serialize.hpp"
#include "minparse/synthetic.hpp"

using namespace minparse;

namespace {

ModelConfig small(ModelConfig c) {
  c.word_dim = 6;
  c.tag_dim = 3;
  if (c.task == Task::kConstituency) c.nonterminal_dim = 3;
  c.lstm_dim = 5;
  c.hidden = 7;
  c.seed = 11;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

/// Rewrites the JSON header of a model file through `edit`.
template <typename Edit>
void tamper(const std::string& path, Edit edit) {
  const std::string bytes = slurp(path);
  std::uint64_t length = 0;
  std::memcpy(&length, bytes.data() + 8, 8);
  nlohmann::json header = nlohmann::json::parse(bytes.substr(16, length));
  edit(header);
  const std::string text = header.dump();
  const std::uint64_t new_length = text.size();
  std::string out = bytes.substr(0, 8);
  out.append(reinterpret_cast<const char*>(&new_length), 8);
  out += text;
  out += bytes.substr(16 + length);
  spit(path, out);
}

std::string load_error(const std::string& path) {
  try {
    DepParser::load(path);
  } catch (const ModelFormatError& e) {
    return e.what();
  }
  return "";
}

bool same_params(const ParamStore& a, const ParamStore& b) {
  if (a.size() != b.size()) return false;
  auto ib = b.begin();
  for (const auto& p : a) {
    const auto& q = *ib++;
    if (p->name != q->name || p->value != q->value || p->mean_sq_grad != q->mean_sq_grad ||
        p->mean_sq_delta != q->mean_sq_delta)
      return false;
  }
  return true;
}

std::vector<Sentence> sentences(int count, std::uint64_t seed) {
  SyntheticRng rng(seed);
  std::vector<Sentence> out;
  for (int i = 0; i < count; ++i) out.push_back(random_projective_tree(rng, 1 + static_cast<int>(rng() % 15)).sentence);
  return out;
}

}  // namespace

TEST_CASE("dependency model round trip") {
  test::TempDir dir;
  const auto corpus = toy_dep_corpus(16, 1);
  DepParser parser(small(ModelConfig::dependency()), build_vocab(corpus), "root");
  parser.init();
  // Give the optimiser state non-trivial values too.
  nn::Rng rng(2);
  for (auto& p : parser.params()) {
    nn::fill_uniform(p->mean_sq_grad, 1.0, rng);
    nn::fill_uniform(p->mean_sq_delta, 1.0, rng);
  }
  parser.save(dir.file("m"));
  const DepParser loaded = DepParser::load(dir.file("m"));
  CHECK(loaded.config() == parser.config());
  CHECK(loaded.vocab() == parser.vocab());
  CHECK(loaded.root_label() == "root");
  CHECK(same_params(parser.params(), loaded.params()));

  for (const auto& s : sentences(100, 3)) {
    const DepTree a = parser.parse(s);
    const DepTree b = loaded.parse(s);
    CHECK(a.heads == b.heads);
    CHECK(a.labels == b.labels);
  }

  loaded.save(dir.file("again"));
  CHECK(slurp(dir.file("m")) == slurp(dir.file("again")));
  CHECK(peek_task(dir.file("m")) == Task::kDependency);
}

TEST_CASE("constituency model round trip") {
  test::TempDir dir;
  const auto corpus = toy_const_corpus(16, 1);
  ConstParser parser(small(ModelConfig::constituency()), build_vocab(corpus));
  parser.init();
  parser.save(dir.file("m"));
  const ConstParser loaded = ConstParser::load(dir.file("m"));
  CHECK(same_params(parser.params(), loaded.params()));
  for (const auto& s : sentences(100, 4)) CHECK(parser.parse(s) == loaded.parse(s));
  CHECK(peek_task(dir.file("m")) == Task::kConstituency);
  CHECK_THROWS_AS(DepParser::load(dir.file("m")), ModelFormatError);
}

TEST_CASE("corrupted files name the offending field") {
  test::TempDir dir;
  const auto corpus = toy_dep_corpus(8, 1);
  DepParser parser(small(ModelConfig::dependency()), build_vocab(corpus));
  parser.init();
  const std::string path = dir.file("m");

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h["format_version"] = 99; });
  CHECK(load_error(path).find("format_version") != std::string::npos);

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h["config"]["lstm_dim"] = 6; });
  CHECK(load_error(path).find("config_hash") != std::string::npos);

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h["vocab_hash"] = 12345; });
  CHECK(load_error(path).find("vocab_hash") != std::string::npos);

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h["task"] = "constituency"; });
  CHECK(load_error(path).find("task") != std::string::npos);

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h["tensors"][0]["name"] = "bogus"; });
  CHECK(load_error(path).find("tensors[0]") != std::string::npos);

  parser.save(path);
  tamper(path, [](nlohmann::json& h) { h.erase("vocab"); });
  CHECK(load_error(path).find("vocab") != std::string::npos);

  parser.save(path);
  std::string bytes = slurp(path);
  spit(path, bytes.substr(0, bytes.size() - 3));
  CHECK(load_error(path).find("truncated") != std::string::npos);
  spit(path, bytes + "x");
  CHECK(load_error(path).find("trailing") != std::string::npos);
  spit(path, "NOTAMODEL-------");
  CHECK(load_error(path).find("magic") != std::string::npos);
  CHECK_THROWS_AS(DepParser::load(dir.file("missing")), std::runtime_error);
}

TEST_CASE("restore_params checks the parameter layout") {
  test::TempDir dir;
  const auto corpus = toy_dep_corpus(8, 1);
  DepParser parser(small(ModelConfig::dependency()), build_vocab(corpus));
  parser.init();
  parser.save(dir.file("m"));
  const LoadedModel model = read_model(dir.file("m"));

  ModelConfig other = small(ModelConfig::dependency());
  other.hidden = 9;
  DepParser different(other, build_vocab(corpus));
  CHECK_THROWS_AS(restore_params(different.params(), model), ModelFormatError);
}
