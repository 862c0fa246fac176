#include "eisen/config.hpp"

#include "eisen/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

namespace eisen {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw DomainError("config: bad value '" + text + "' for " + key);
  return v;
}

}  // namespace

void Config::validate() const {
  if (precision_digits < 16 || precision_digits > 500)
    throw DomainError("config: precision_digits must lie in [16, 500]");
  if (sieve_limit == 0) throw DomainError("config: sieve_limit must be positive");
  if (!(envelope_C > 0) || !(envelope_c > 0) || !(default_tol > 0))
    throw DomainError("config: envelope constants and default_tol must be positive");
}

void set_config_value(Config& c, const std::string& key, const std::string& value) {
  if (key == "cache_dir")
    c.cache_dir = value;
  else if (key == "precision_digits")
    c.precision_digits = parse_number<int>(key, value);
  else if (key == "sieve_limit")
    c.sieve_limit = parse_number<std::uint64_t>(key, value);
  else if (key == "envelope_C")
    c.envelope_C = parse_number<double>(key, value);
  else if (key == "envelope_c")
    c.envelope_c = parse_number<double>(key, value);
  else if (key == "default_tol")
    c.default_tol = parse_number<double>(key, value);
  else
    throw DomainError("config: unknown key '" + key + "'");
}

Config parse_config(std::istream& in, Config base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    try {
      set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

Config load_config_file(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  return parse_config(in, std::move(base));
}

Config config_from_environment() {
  Config c;
  if (const char* path = std::getenv("EISEN_CONFIG"); path && *path) c = load_config_file(path, c);
  if (const char* dir = std::getenv("EISEN_CACHE_DIR"); dir && *dir) c.cache_dir = dir;
  return c;
}

}  // namespace eisen
