#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lbv::cli {

enum class Format { Csv, Structured };

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> config_path;
  std::optional<std::string> function_path;
  std::optional<std::string> output_path;
  std::optional<std::string> summary_path;
  std::optional<std::string> emit_g_path;
  std::optional<std::string> lambda_spec;
  std::optional<std::string> omega_spec;
  Format format = Format::Structured;
  double p = 1.0;
  double q = 1.0;

  // variation
  bool force_exact = false;
  bool force_greedy = false;
  std::size_t limit = 16;
  // modulus
  double delta = 0.0;
  bool profile = false;
  // embed-check
  std::int64_t n_max = 16384;
  std::size_t samples = 0;  // 0: one per doubling of n
  // extremal
  std::size_t n = 1;
  double r = 1.0;
  double budget = 1.0;
  std::size_t resolution = 200;
  // counterexample
  int stages = 3;
  std::int64_t n_limit = std::int64_t{1} << 22;
  double relax_a = 4.0;
  double relax_c = 1.0;

  unsigned threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv into a RunConfig. Usage problems throw lbv::ArgumentError;
/// --help prints to `out` and yields std::nullopt.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one subcommand; returns the process exit status.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lbv::cli
