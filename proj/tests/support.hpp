#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kholag/braid.hpp"
#include "kholag/cobordism.hpp"

namespace testing_support {

struct CorpusEntry {
  std::string name;
  kholag::BraidWord braid;
  std::string text;
  std::optional<int> tb, r;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);
// Corpus entries whose closure is a knot.
std::vector<CorpusEntry> corpus_knots();

kholag::Movie load_movie(const std::string& file_name);
std::string read_file(const std::string& path);

}  // namespace testing_support
