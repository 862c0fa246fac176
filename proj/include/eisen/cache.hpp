#pragma once

// Persistent cache of K-Bessel values. One record per line, tab-separated in
// key order, floats in shortest round-trip form, so a warm run reproduces a
// cold run bit for bit.

#include "eisen/kbessel.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

namespace eisen {

struct CacheKey {
  std::string method;  // which evaluator produced the value
  double sigma = 0.0, t = 0.0, u = 0.0;
  double tol = 0.0;  // requested relative tolerance
  int digits = 16;

  auto tie() const { return std::tie(method, sigma, t, u, tol, digits); }
  bool operator<(const CacheKey& o) const { return tie() < o.tie(); }
  bool operator==(const CacheKey& o) const { return tie() == o.tie(); }
};

struct CacheEntry {
  CacheKey key;
  cplx scaled_value;
  double log_scale = 0.0;
  double abs_err = 0.0;
};

/// Lookups match the key exactly, tolerance included, so a value computed
/// for one tolerance never stands in for another.
class BesselCache {
 public:
  static constexpr const char* kHeader = "# eisen-bessel-cache v1";

  /// Memory-only cache.
  BesselCache() = default;
  /// Loads `path` if it exists, drops corrupt lines and duplicates, rewrites
  /// the file compacted and appends to it from then on. A file with another
  /// header is ignored and replaced. ResourceError if the file cannot be
  /// written.
  explicit BesselCache(const std::string& path);

  std::optional<CacheEntry> get(const CacheKey& key) const;
  void put(const CacheEntry& entry);

  std::size_t size() const;
  int corrupt_lines() const noexcept { return corrupt_; }
  bool header_mismatch() const noexcept { return mismatch_; }
  const std::string& path() const noexcept { return path_; }

  /// Wraps `inner`: hits come back from the cache, misses are computed,
  /// stored and returned unchanged.
  BesselProvider provider(BesselProvider inner, std::string method, int digits = 16);

 private:
  std::string path_;
  std::map<CacheKey, CacheEntry> entries_;
  std::ofstream out_;
  int corrupt_ = 0;
  bool mismatch_ = false;
  mutable std::mutex mu_;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
/// CacheEntry as one tab-separated line, and back; nullopt on a malformed line.
std::string format_entry(const CacheEntry& e);
std::optional<CacheEntry> parse_entry(const std::string& line);

/// Path of the cache file inside a cache directory, creating the directory.
std::string cache_file_in(const std::string& dir);

}  // namespace eisen
