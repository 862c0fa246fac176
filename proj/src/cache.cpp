#include "eisen/cache.hpp"

#include "eisen/errors.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

namespace eisen {

namespace {

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_entry(const CacheEntry& e) {
  const CacheKey& k = e.key;
  std::string s = k.method;
  for (double v : {k.sigma, k.t, k.u, k.tol}) s += '\t' + format_double(v);
  s += '\t' + std::to_string(k.digits);
  for (double v : {e.scaled_value.real(), e.scaled_value.imag(), e.log_scale, e.abs_err}) s += '\t' + format_double(v);
  return s;
}

std::optional<CacheEntry> parse_entry(const std::string& line) {
  const std::vector<std::string> f = split_tabs(line);
  if (f.size() != 10 || f[0].empty()) return std::nullopt;
  double v[9];
  for (int i = 0; i < 9; ++i) {
    if (i == 4) continue;
    auto d = parse_double(f[i + 1]);
    if (!d) return std::nullopt;
    v[i] = *d;
  }
  int digits = 0;
  const std::string& ds = f[5];
  auto [p, ec] = std::from_chars(ds.data(), ds.data() + ds.size(), digits);
  if (ec != std::errc() || p != ds.data() + ds.size()) return std::nullopt;
  CacheEntry e;
  e.key = {f[0], v[0], v[1], v[2], v[3], digits};
  e.scaled_value = {v[5], v[6]};
  e.log_scale = v[7];
  e.abs_err = v[8];
  return e;
}

std::string cache_file_in(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create cache directory " + dir + ": " + ec.message());
  return (std::filesystem::path(dir) / "bessel.cache").string();
}

BesselCache::BesselCache(const std::string& path) : path_(path) {
  {
    std::ifstream in(path);
    std::string line;
    if (in && std::getline(in, line)) {
      if (line != kHeader) {
        mismatch_ = true;
      } else {
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          if (auto e = parse_entry(line))
            entries_[e->key] = *e;
          else
            ++corrupt_;
        }
      }
    }
  }
  if (corrupt_ > 0) std::cerr << "bessel cache: skipped " << corrupt_ << " corrupt line(s) in " << path << '\n';
  // compaction: rewrite what survived, then append
  {
    std::ofstream fresh(path, std::ios::trunc);
    if (!fresh) throw ResourceError("cannot write cache file " + path);
    fresh << kHeader << '\n';
    for (const auto& [key, e] : entries_) fresh << format_entry(e) << '\n';
  }
  out_.open(path, std::ios::app);
  if (!out_) throw ResourceError("cannot append to cache file " + path);
}

std::optional<CacheEntry> BesselCache::get(const CacheKey& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void BesselCache::put(const CacheEntry& entry) {
  std::lock_guard lock(mu_);
  entries_.insert_or_assign(entry.key, entry);
  if (out_.is_open()) {
    out_ << format_entry(entry) << '\n';
    out_.flush();
  }
}

std::size_t BesselCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

BesselProvider BesselCache::provider(BesselProvider inner, std::string method, int digits) {
  if (!inner) inner = default_bessel_provider();
  return [this, inner = std::move(inner), method = std::move(method), digits](const BesselOrder& nu, double u,
                                                                               double tol) {
    const CacheKey key{method, nu.sigma(), nu.t(), u, tol, digits};
    if (auto hit = get(key)) {
      BesselValue v;
      v.scaled_value = hit->scaled_value;
      v.log_scale = hit->log_scale;
      v.abs_err = hit->abs_err;
      v.regime = classify_regime(nu.t(), u);
      v.method = Method::cached;
      return v;
    }
    BesselValue v = inner(nu, u, tol);
    put({key, v.scaled_value, v.log_scale, v.abs_err});
    return v;
  };
}

}  // namespace eisen
