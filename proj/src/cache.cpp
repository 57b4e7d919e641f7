#include "kholag/cache.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kholag/error.hpp"

namespace kholag {

std::string cache_key(const std::string& kind, const BraidWord& b) {
  return kind + "|" + (b.is_empty_link() ? std::string("0:") : canonical_key(b));
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<Cache> Cache::from_env() {
  const char* dir = std::getenv(kCacheEnvVar);
  if (!dir || !*dir) return std::nullopt;
  return Cache(dir);
}

std::filesystem::path Cache::path_for(const std::string& key) const {
  // Readable prefix plus a 64-bit FNV-1a hash of the full key.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::string stem;
  for (char c : key.substr(0, 40)) stem += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  std::ostringstream name;
  name << stem << '-' << std::hex << h << ".json";
  return dir_ / name.str();
}

std::optional<std::string> Cache::get(const std::string& key) const {
  const auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buf.str());
    if (j.at("key").get<std::string>() != key) throw std::runtime_error("key mismatch");
    return j.at("value").get<std::string>();
  } catch (const std::exception& e) {
    std::cerr << "warning: discarding corrupt cache entry " << path.string() << " (" << e.what() << ")\n";
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
  }
}

void Cache::put(const std::string& key, const std::string& value) const {
  const auto path = path_for(key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry " + tmp.string());
    out << nlohmann::json{{"key", key}, {"value", value}}.dump();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kholag
