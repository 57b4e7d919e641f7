#include "kholag/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "kholag/error.hpp"

namespace kholag {

int BraidWord::writhe() const {
  int w = 0;
  for (int l : letters) w += l > 0 ? 1 : -1;
  return w;
}

int BraidWord::components() const {
  std::vector<int> perm(strands);
  std::iota(perm.begin(), perm.end(), 0);
  // perm[p] = strand currently sitting at position p.
  for (int l : letters) {
    int i = std::abs(l);
    std::swap(perm[i - 1], perm[i]);
  }
  std::vector<bool> seen(strands, false);
  int cycles = 0;
  for (int s = 0; s < strands; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int x = s; !seen[x]; x = perm[x]) seen[x] = true;
  }
  return cycles;
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  os << strands << ':';
  for (int l : letters) os << ' ' << l;
  return os.str();
}

BraidWord BraidWord::rotated(int k) const {
  BraidWord r = *this;
  if (letters.empty()) return r;
  int n = static_cast<int>(letters.size());
  k = ((k % n) + n) % n;
  std::rotate(r.letters.begin(), r.letters.begin() + k, r.letters.end());
  return r;
}

BraidWord BraidWord::mirrored() const {
  BraidWord r = *this;
  for (int& l : r.letters) l = -l;
  return r;
}

BraidWord BraidWord::stabilized_positive() const {
  BraidWord r = *this;
  r.strands += 1;
  if (strands > 0) r.letters.push_back(strands);
  return r;
}

BraidWord BraidWord::with_letter_inserted(std::size_t position, int letter) const {
  if (position > letters.size()) throw DomainError("insertion position out of range");
  BraidWord r = *this;
  r.letters.insert(r.letters.begin() + static_cast<std::ptrdiff_t>(position), letter);
  return r;
}

BraidWord BraidWord::with_letter_erased(std::size_t position) const {
  if (position >= letters.size()) throw DomainError("erase position out of range");
  BraidWord r = *this;
  r.letters.erase(r.letters.begin() + static_cast<std::ptrdiff_t>(position));
  return r;
}

void validate(const BraidWord& b) {
  if (b.strands < 1) throw ParseError("braid must have at least one strand");
  for (int l : b.letters) {
    if (l == 0 || std::abs(l) >= b.strands)
      throw ParseError("braid letter " + std::to_string(l) + " out of range for " +
                       std::to_string(b.strands) + " strands");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view tok) {
  int value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ParseError("not an integer: '" + std::string(tok) + "'");
  return value;
}

BraidWord parse_unchecked(std::string_view text) {
  text = trim(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("braid text must look like 'n: l1 l2 ...'");
  BraidWord b;
  b.strands = parse_int(trim(text.substr(0, colon)));
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    rest = trim(rest);
    if (rest.empty()) break;
    auto end = rest.find_first_of(" \t\r\n,");
    std::string_view tok = rest.substr(0, end);
    b.letters.push_back(parse_int(tok));
    if (end == std::string_view::npos) break;
    rest = rest.substr(end + 1);
  }
  return b;
}

}  // namespace

BraidWord parse_braid(std::string_view text) {
  BraidWord b = parse_unchecked(text);
  validate(b);
  return b;
}

BraidWord parse_frame(std::string_view text) {
  auto t = trim(text);
  if (t == "empty" || t == "∅") return BraidWord::empty_link();
  BraidWord b = parse_unchecked(t);
  if (b.strands == 0) {
    if (!b.letters.empty()) throw ParseError("the empty link has no letters");
    return b;
  }
  validate(b);
  return b;
}

int self_linking(const BraidWord& b) { return b.writhe() - b.strands; }

std::string canonical_key(const BraidWord& b) {
  BraidWord best = b;
  for (std::size_t k = 1; k < b.letters.size(); ++k) {
    BraidWord r = b.rotated(static_cast<int>(k));
    if (r.letters < best.letters) best = std::move(r);
  }
  return best.to_string();
}

}  // namespace kholag
