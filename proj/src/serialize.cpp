#include "minparse/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace minparse {

namespace {

constexpr char kMagic[8] = {'M', 'I', 'N', 'P', 'A', 'R', 'S', 'E'};

std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << v;
  return ss.str();
}

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(U)];
    std::memcpy(bytes, &v, sizeof(U));
    for (std::size_t i = 0; i < sizeof(U) / 2; ++i) std::swap(bytes[i], bytes[sizeof(U) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(U));
  }
  return v;
}

void write_u64(std::ostream& out, std::uint64_t v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_block(std::ostream& out, const Tensor& t) {
  for (nn::Index i = 0; i < t.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(t.data()[i]);
    write_u64(out, bits);
  }
}

std::vector<Real> read_block(std::istream& in, std::size_t count, const std::string& name) {
  std::vector<Real> values(count);
  for (auto& v : values) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits))
      throw ModelFormatError("truncated tensor data for '" + name + "'");
    v = std::bit_cast<Real>(to_little(bits));
  }
  return values;
}

}  // namespace

void save_model(const std::string& path, const ModelConfig& config, const Vocab& vocab,
                const nlohmann::json& extra, const ParamStore& params) {
  nlohmann::json header;
  header["format_version"] = kModelFormatVersion;
  header["task"] = to_string(config.task);
  header["config"] = config.to_json();
  header["config_hash"] = hex(config.hash());
  header["vocab"] = vocab.to_json();
  header["vocab_hash"] = hex(vocab.hash());
  header["extra"] = extra;
  auto& tensors = header["tensors"] = nlohmann::json::array();
  for (const auto& p : params)
    tensors.push_back({{"name", p->name}, {"rows", p->value.rows()}, {"cols", p->value.cols()}});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
  const std::string text = header.dump();
  out.write(kMagic, sizeof kMagic);
  write_u64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& p : params) {
    write_block(out, p->value);
    write_block(out, p->mean_sq_grad);
    write_block(out, p->mean_sq_delta);
  }
  if (!out) throw std::runtime_error("error while writing model file '" + path + "'");
}

namespace {

nlohmann::json read_header(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw ModelFormatError("not a model file (bad magic)");
  std::uint64_t length = 0;
  if (!in.read(reinterpret_cast<char*>(&length), sizeof length))
    throw ModelFormatError("truncated header length");
  length = to_little(length);
  if (length > (1ULL << 32)) throw ModelFormatError("implausible header length");
  std::string text(length, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(length)))
    throw ModelFormatError("truncated header");
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("malformed header: ") + e.what());
  }
}

template <typename Fn>
auto field(const char* name, Fn fn) {
  try {
    return fn();
  } catch (const ModelFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelFormatError(std::string("header field '") + name + "': " + e.what());
  }
}

}  // namespace

Task peek_task(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  const auto header = read_header(in);
  return field("task", [&] { return parse_task(header.at("task").get<std::string>()); });
}

LoadedModel read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  const auto header = read_header(in);

  const int version = field("format_version", [&] { return header.at("format_version").get<int>(); });
  if (version != kModelFormatVersion)
    throw ModelFormatError("header field 'format_version': unsupported version " +
                           std::to_string(version));

  LoadedModel model;
  model.config = field("config", [&] { return ModelConfig::from_json(header.at("config")); });
  const Task task = field("task", [&] { return parse_task(header.at("task").get<std::string>()); });
  if (task != model.config.task) throw ModelFormatError("header field 'task': disagrees with config");
  const auto config_hash = field("config_hash", [&] { return header.at("config_hash").get<std::string>(); });
  if (config_hash != hex(model.config.hash()))
    throw ModelFormatError("header field 'config_hash': mismatch with stored config");

  model.vocab = field("vocab", [&] { return Vocab::from_json(header.at("vocab")); });
  const auto vocab_hash = field("vocab_hash", [&] { return header.at("vocab_hash").get<std::string>(); });
  if (vocab_hash != hex(model.vocab.hash()))
    throw ModelFormatError("header field 'vocab_hash': mismatch with stored vocabulary");

  model.extra = header.value("extra", nlohmann::json::object());
  model.tensors = field("tensors", [&] { return header.at("tensors"); });
  for (std::size_t i = 0; i < model.tensors.size(); ++i) {
    const auto& t = model.tensors[i];
    const std::string name = field("tensors", [&] { return t.at("name").get<std::string>(); });
    const auto rows = field("tensors", [&] { return t.at("rows").get<long>(); });
    const auto cols = field("tensors", [&] { return t.at("cols").get<long>(); });
    if (rows < 0 || cols < 0)
      throw ModelFormatError("header field 'tensors[" + std::to_string(i) + "]': negative shape");
    const auto count = static_cast<std::size_t>(rows * cols);
    for (int k = 0; k < 3; ++k) model.blocks.push_back(read_block(in, count, name));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ModelFormatError("trailing bytes after tensor data");
  return model;
}

void restore_params(ParamStore& params, const LoadedModel& model) {
  if (model.tensors.size() != params.size())
    throw ModelFormatError("header field 'tensors': expected " + std::to_string(params.size()) +
                           " tensors, found " + std::to_string(model.tensors.size()));
  std::size_t i = 0;
  for (auto& p : params) {
    const auto& t = model.tensors[i];
    const std::string where = "header field 'tensors[" + std::to_string(i) + "]'";
    if (t.at("name").get<std::string>() != p->name)
      throw ModelFormatError(where + ": expected '" + p->name + "'");
    if (t.at("rows").get<long>() != p->value.rows() || t.at("cols").get<long>() != p->value.cols())
      throw ModelFormatError(where + ": shape mismatch for '" + p->name + "'");
    Tensor* targets[3] = {&p->value, &p->mean_sq_grad, &p->mean_sq_delta};
    for (int k = 0; k < 3; ++k) {
      const auto& block = model.blocks[3 * i + static_cast<std::size_t>(k)];
      std::copy(block.begin(), block.end(), targets[k]->data());
    }
    p->grad.setZero();
    ++i;
  }
}

}  // namespace minparse
