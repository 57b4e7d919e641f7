#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kholag/braid.hpp"
#include "kholag/complex.hpp"
#include "kholag/khovanov.hpp"

namespace kholag {

// One elementary move of a braid-level movie, read bottom to top: it turns
// the frame below into the frame above.
struct Move {
  enum class Type {
    birth,                        // new unknotted strand on the right
    death,                        // remove a free rightmost strand
    saddle,                       // insert sign*generator at position (a band)
    band_positive,                // saddle with sign +1
    braid_conjugate,              // rotate the word by `rotation` letters
    markov_stabilize_positive,    // add strand n+1 and append sigma_n
    markov_destabilize_positive,  // inverse of the above
    reidemeister,                 // R1 (sign), R2 (insert/remove sigma sigma^-1), R3 (braid relation)
  };
  enum class Reidemeister { r1, r2, r3 };

  Type type = Type::birth;
  std::size_t position = 0;
  int generator = 1;
  int sign = 1;
  int rotation = 1;
  Reidemeister kind = Reidemeister::r1;
  bool inverse = false;  // R1/R2/R3: remove (or apply right-to-left) instead of insert

  static Move birth() { return Move{Type::birth}; }
  static Move death() { return Move{Type::death}; }
  static Move band(std::size_t position, int generator, int sign = 1);
  static Move conjugate(int rotation);
  static Move stabilize() { return Move{Type::markov_stabilize_positive}; }
  static Move destabilize() { return Move{Type::markov_destabilize_positive}; }
  static Move r1(int sign, bool remove = false);
  static Move r2(std::size_t position, int generator, bool remove = false);
  static Move r3(std::size_t position, int generator, bool inverse = false);

  // Euler characteristic contribution of the move.
  int euler() const;
  // True for births, positive bands and transverse isotopies.
  bool ascending_positive() const;
  std::string describe() const;
};

// Frame above `below` after the move; DomainError if the move does not apply.
BraidWord apply_move(const Move& m, const BraidWord& below);

struct Movie {
  std::vector<BraidWord> frames;  // frames[0] is the bottom (K_-)
  std::vector<Move> moves;        // moves[t] turns frames[t] into frames[t+1]

  const BraidWord& bottom() const { return frames.front(); }
  const BraidWord& top() const { return frames.back(); }
  int euler_characteristic() const;
  bool ascending_positive() const;
  // Throws ParseError naming the first inconsistent frame.
  void validate() const;

  static Movie from_moves(BraidWord bottom, std::vector<Move> moves);
};

// {"frames": ["n: ...", ...], "moves": [{"type": "...", "params": {...}}]}.
// A single frame is expanded by applying the moves. Also accepted:
// {"legendrian": [{"type": "leg_birth"|"leg_pinch"|"leg_isotopy", "params": {...}}]}.
Movie parse_movie_json(const std::string& text);
std::string movie_to_json(const Movie& movie);

struct LegendrianMove {
  enum class Type { leg_birth, leg_pinch, leg_isotopy };
  Type type = Type::leg_birth;
  std::optional<std::size_t> position;  // pinch site in the braid word (default: end)
  int generator = 1;                    // pinch between strands generator-1 and generator
  std::vector<Move> isotopy;            // transverse isotopy realising a Legendrian isotopy
};

// Births become births of split unknots, pinches become positive bands (with
// positive stabilizations first when the band needs more strands), isotopies
// become their braid-level transverse isotopy. Starts from the empty link.
Movie legendrian_to_transverse_movie(const std::vector<LegendrianMove>& moves);

// Chain map between two cube complexes, homological degree preserving.
// matrices[k] maps degree source.min_degree()+k of the source.
class ChainMap {
 public:
  ChainMap(std::shared_ptr<const CubeComplex> source, std::shared_ptr<const CubeComplex> target,
           std::vector<SparseMatrix> matrices, int quantum_shift);

  const CubeComplex& source() const { return *source_; }
  const CubeComplex& target() const { return *target_; }
  std::shared_ptr<const CubeComplex> source_ptr() const { return source_; }
  std::shared_ptr<const CubeComplex> target_ptr() const { return target_; }
  int quantum_shift() const { return shift_; }
  // C_j(source) -> C_j(target), correctly shaped for every j.
  SparseMatrix matrix(int j) const;
  Chain apply(const Chain& z) const;

  static ChainMap identity(std::shared_ptr<const CubeComplex> c);

 private:
  std::shared_ptr<const CubeComplex> source_, target_;
  std::vector<SparseMatrix> matrices_;
  int shift_;
};

// this-then-next: (next o first)
ChainMap compose(const ChainMap& first, const ChainMap& next);

// Map C(above) -> C(below) for one move. Verified to commute with the
// differentials and to respect the filtration shift (IntegrityError).
ChainMap elementary_chain_map(const Move& m, std::shared_ptr<const CubeComplex> above,
                              std::shared_ptr<const CubeComplex> below);

// Composite C(top) -> C(bottom), quantum shift = Euler characteristic.
ChainMap compose_movie_map(const Movie& movie, Theory theory);

// (quantum shift, 0); checks exact homogeneity for Khovanov-theory maps.
std::pair<int, int> map_bidegree(const ChainMap& f);

enum class Functoriality { preserved_plus, preserved_minus, violated };
const char* to_string(Functoriality f);

struct FunctorialityResult {
  Functoriality verdict = Functoriality::violated;
  bool hypotheses_met = true;  // movie is ascending with positive critical points
  // Image of the top class, in the bottom complex (or window).
  Chain image;
};

// Does the movie map send psi(top) to +-psi(bottom) in Khovanov homology?
FunctorialityResult check_functoriality(const Movie& movie);
// Image of psi(top) in Kh(empty) = Z for a movie whose bottom is empty.
long check_filling_value(const Movie& movie);
// Same question for [psi~_{p,q}] in gr_{p,q} of the Lee complexes.
FunctorialityResult check_filtered_functoriality(const Movie& movie, int p, int q);

}  // namespace kholag
