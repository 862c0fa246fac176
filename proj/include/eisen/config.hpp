#pragma once

// Run configuration: a flat key=value file, overridden by environment
// variables and then by command-line flags.

#include <cstdint>
#include <istream>
#include <string>

namespace eisen {

struct Config {
  std::string cache_dir;  // empty disables the Bessel cache
  int precision_digits = 16;
  std::uint64_t sieve_limit = 2'000'000;
  double envelope_C = 3.0;
  double envelope_c = 0.14;
  double default_tol = 1e-10;

  /// DomainError unless every numeric field is positive and
  /// precision_digits lies in [16, 500].
  void validate() const;
};

/// Reads key=value lines; '#' starts a comment, blank lines are skipped.
/// DomainError names the line of an unknown key or unparsable value.
Config parse_config(std::istream& in, Config base = {});
Config load_config_file(const std::string& path, Config base = {});

/// Defaults, then the file named by EISEN_CONFIG (if set), then
/// EISEN_CACHE_DIR.
Config config_from_environment();

/// Applies one key=value assignment.
void set_config_value(Config& c, const std::string& key, const std::string& value);

}  // namespace eisen
