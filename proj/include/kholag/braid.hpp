#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kholag {

// A braid word on `strands` strands. Letter k > 0 is the positive generator
// sigma_k crossing positions k-1 and k; -k is its inverse.
//
// strands == 0 with no letters encodes the empty link, which only appears as
// a frame of a cobordism movie.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  bool is_empty_link() const { return strands == 0; }
  int writhe() const;
  // Number of cycles of the underlying permutation.
  int components() const;
  std::string to_string() const;

  // Cyclic rotation: the first k letters move to the end.
  BraidWord rotated(int k) const;
  BraidWord mirrored() const;
  // Adds strand n+1 and appends sigma_n (positive Markov stabilization).
  BraidWord stabilized_positive() const;
  BraidWord with_letter_inserted(std::size_t position, int letter) const;
  BraidWord with_letter_erased(std::size_t position) const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

  static BraidWord empty_link() { return BraidWord{0, {}}; }
};

// "n: l1 l2 ... lk". Throws ParseError.
BraidWord parse_braid(std::string_view text);
// Same grammar, but also accepts "0:" and "empty" for the empty link.
BraidWord parse_frame(std::string_view text);
// Throws ParseError when a letter is out of range or strands < 1.
void validate(const BraidWord& b);

// sl = writhe - strands of the closure viewed as a transverse link.
int self_linking(const BraidWord& b);

// Conjugation-invariant key: the lexicographically least cyclic rotation.
std::string canonical_key(const BraidWord& b);

}  // namespace kholag
