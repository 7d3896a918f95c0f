#pragma once

#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>

#include "navrl/neural/optimizer.hpp"
#include "navrl/neural/qnetwork.hpp"

namespace navrl::neural {

inline constexpr int kCheckpointFormatVersion = 1;

/// Thrown by the loader for a format_version it does not understand.
class CheckpointVersionError : public std::runtime_error {
 public:
  CheckpointVersionError(int expected, int actual);
  int expected() const { return expected_; }
  int actual() const { return actual_; }

 private:
  int expected_;
  int actual_;
};

struct Checkpoint {
  NetworkConfig network_config;
  Parameters parameters;
  std::optional<Optimizer> optimizer;
  /// Named generator states (mt19937_64 text form).
  std::map<std::string, std::string> rng_state;
  /// Free-form string metadata owned by the caller (variant, episode, config text, ...).
  std::map<std::string, std::string> metadata;
};

/// JSON document: {format_version, network_config, parameters, optimizer, rng_state, metadata}.
/// Parameters are nested lists; output is deterministic, so save(load(save(x))) == save(x).
std::string save_checkpoint(const Checkpoint& ckpt);

/// Throws CheckpointVersionError for an unknown format_version, std::runtime_error
/// for malformed documents, DimensionError for shape mismatches.
Checkpoint load_checkpoint(std::string_view json_text);

QNetwork network_from_checkpoint(const Checkpoint& ckpt);

}  // namespace navrl::neural
