#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agm/comparator.hpp"
#include "agm/io.hpp"

namespace agm::cli {

/// Invalid, unknown or missing configuration key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A well-formed value outside its allowed range.
class ConfigRangeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Everything a batch run needs. Flat key=value file; '#' starts a comment.
struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;

  std::string edges;
  std::string communities;
  std::string out;
  CommunityFormat community_format = CommunityFormat::automatic;

  double tol = 1e-6;
  std::size_t max_iter = 1000;
  bool fit_epsilon = false;

  std::optional<double> beta;
  double scale = 1.0;
  double epsilon = 0.0;
  bool allow_quadratic = false;

  double bins = 2.0;
  std::size_t min_bin_samples = 5;
  std::size_t k_max = 10;
  std::size_t pair_sample = 1000;
  std::size_t hop_sources = 1000;
  std::size_t eig_k = 50;
  std::vector<std::string> properties;  // empty = all

  /// Sets one key; ConfigError for unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);

  /// Range checks on every numeric option.
  void validate() const;

  /// Stable "key=value" rendering of every key; the basis of the config hash.
  std::string canonical() const;

  SuiteOptions suite_options(std::uint64_t seed) const;
};

/// Parses config text; `required` keys must be present.
RunConfig parse_run_config(std::string_view text, const std::vector<std::string>& required = {});

std::vector<std::string> split_list(std::string_view text);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view text);

}  // namespace agm::cli
