#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace testing_support {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    const auto j = nlohmann::json::parse(read_file(KHOLAG_CORPUS_FILE));
    for (const auto& [name, e] : j.items()) {
      CorpusEntry c;
      c.name = name;
      c.text = e.at("braid").get<std::string>();
      c.braid = kholag::parse_braid(c.text);
      if (e.contains("tb")) c.tb = e.at("tb").get<int>();
      if (e.contains("r")) c.r = e.at("r").get<int>();
      out.push_back(std::move(c));
    }
    return out;
  }();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw std::out_of_range("no corpus entry " + name);
}

std::vector<CorpusEntry> corpus_knots() {
  std::vector<CorpusEntry> out;
  for (const auto& e : corpus())
    if (e.braid.components() == 1) out.push_back(e);
  return out;
}

kholag::Movie load_movie(const std::string& file_name) {
  return kholag::parse_movie_json(read_file(std::string(KHOLAG_MOVIE_DIR) + "/" + file_name));
}

}  // namespace testing_support
