#ifndef MINPARSE_SERIALIZE_HPP
#define MINPARSE_SERIALIZE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "minparse/model.hpp"

namespace minparse {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model file layout:
///
///   8 bytes   magic "MINPARSE"
///   8 bytes   header length, little-endian uint64
///   N bytes   JSON header: format_version, task, config, config_hash, vocab,
///             vocab_hash, extra, tensors [{name, rows, cols}]
///   then for each tensor in header order: value, E[g^2], E[dx^2] as raw
///   little-endian float64 arrays (rows * cols each).
inline constexpr int kModelFormatVersion = 1;

struct LoadedModel {
  ModelConfig config;
  Vocab vocab;
  nlohmann::json extra;
  nlohmann::json tensors;  // header entries
  std::vector<std::vector<Real>> blocks;  // 3 per tensor
};

void save_model(const std::string& path, const ModelConfig& config, const Vocab& vocab,
                const nlohmann::json& extra, const ParamStore& params);

/// Reads and validates the header (version, hashes). Errors name the field.
LoadedModel read_model(const std::string& path);
Task peek_task(const std::string& path);

/// Copies tensors into `params`, checking names and shapes one by one.
void restore_params(ParamStore& params, const LoadedModel& model);

}  // namespace minparse

#endif  // MINPARSE_SERIALIZE_HPP
