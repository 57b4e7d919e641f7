#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "kholag/braid.hpp"

namespace kholag {

inline constexpr const char* kCacheEnvVar = "KHOLAG_CACHE_DIR";

// "<kind>|<least rotation of the word>": conjugate words share a key.
std::string cache_key(const std::string& kind, const BraidWord& b);

// Directory of JSON payloads keyed by strings. Values round-trip byte for
// byte. Unreadable or mismatched entries are deleted with a warning on
// stderr and reported as misses.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  // Cache rooted at $KHOLAG_CACHE_DIR, if set and non-empty.
  static std::optional<Cache> from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& value) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace kholag
