#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaussconv/ff.hpp"

namespace gaussconv::report {

inline constexpr const char* kArtifactVersion = "1.0.0";
/// Environment variable naming the default table cache directory.
inline constexpr const char* kCacheEnv = "GAUSSCONV_CACHE_DIR";

enum class Format { kJson, kCsv };

/// Exit statuses of run().
enum Status : int { kOk = 0, kViolation = 1, kConfigError = 2, kResourceError = 3 };

struct RunConfig {
  std::string command;
  std::uint32_t p = 0;
  unsigned f = 1;
  unsigned n = 0;
  unsigned r = 0;  // primitive-scan degree
  unsigned t = 0;  // counterexample parameter
  unsigned m = 0;  // window, lift degree or second tensor degree
  std::optional<std::int64_t> e;
  std::optional<std::int64_t> eta;
  bool all_characters = false;
  unsigned precision = 0;  // padic K; 0 picks the minimum that suffices
  Format format = Format::kJson;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> cache_dir;
  unsigned jobs = 1;
  std::uint64_t size_cap = ff::kDefaultSizeCap;
  std::uint32_t max_q = 7;
  bool expect_collisions = false;
  bool timing = false;
};

/// Names of every subcommand, in help order.
const std::vector<std::string>& commands();

/// Throws std::invalid_argument with an actionable message.
void validate(const RunConfig& config);

struct Outcome {
  nlohmann::json document;  // {meta, result, assertions}
  std::string csv;
  int status = kOk;
};

/// Runs one subcommand. Validation, domain and resource errors propagate.
Outcome execute(const RunConfig& config);

/// validate + execute + write the artifact; errors become exit statuses with
/// a message on diag.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace gaussconv::report
