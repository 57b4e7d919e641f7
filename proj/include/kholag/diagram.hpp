#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kholag/braid.hpp"

namespace kholag {

// Resolution choice per crossing, bit c = smoothing of crossing c.
using Vertex = std::uint64_t;

// One crossing in planar-diagram form: edges listed counterclockwise starting
// from the incoming under-strand. The 0-smoothing joins edges[0]-edges[1] and
// edges[2]-edges[3]; the 1-smoothing joins edges[0]-edges[3] and edges[1]-edges[2].
struct Crossing {
  std::array<int, 4> edges{};
  int sign = 1;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Geometry of a braid closure drawn with the braid vertical, oriented upward,
// closing arcs on the right. Strand piece (level t, position k) is the point
// (k, t); crossing t occupies the row t <= y <= t+1.
struct BraidEmbedding {
  BraidWord braid;
  int levels = 1;  // max(letters, 1)
  // edge id of the strand piece at (level, position), level in [0, levels).
  std::vector<int> edge_of_piece;

  int piece(int level, int position) const { return edge_of_piece[level * braid.strands + position]; }
  friend bool operator==(const BraidEmbedding&, const BraidEmbedding&) = default;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return edge_count_; }
  int component_count() const { return components_; }
  int component_of_edge(int e) const { return component_of_edge_[e]; }
  int n_plus() const;
  int n_minus() const;
  int writhe() const { return n_plus() - n_minus(); }
  bool is_empty() const { return edge_count_ == 0; }

  // Present only for diagrams built by braid_closure().
  const std::optional<BraidEmbedding>& embedding() const { return embedding_; }
  const BraidWord& braid() const;  // throws DomainError for PD diagrams

  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;

  friend LinkDiagram braid_closure(const BraidWord& b);
  friend LinkDiagram from_pd(const std::vector<std::array<int, 4>>& crossings,
                             const std::vector<int>& signs);
  friend LinkDiagram mirror(const LinkDiagram& d);

 private:
  void compute_components();

  std::vector<Crossing> crossings_;
  int edge_count_ = 0;
  int components_ = 0;
  std::vector<int> component_of_edge_;
  std::optional<BraidEmbedding> embedding_;
};

LinkDiagram braid_closure(const BraidWord& b);
// Edges may be labelled by arbitrary integers; they are renumbered densely.
// Every label must occur exactly twice. Throws ParseError otherwise.
LinkDiagram from_pd(const std::vector<std::array<int, 4>>& crossings, const std::vector<int>& signs);
LinkDiagram mirror(const LinkDiagram& d);

// {"strands": n, "letters": [...]} gives a braid closure; {"crossings":
// [[a,b,c,d], ...], "signs": [...]} gives a PD diagram. ParseError otherwise.
LinkDiagram parse_diagram_json(const std::string& text);
// Braid text ("n: ...") or either JSON schema.
LinkDiagram parse_diagram(const std::string& text);
std::string braid_to_json(const BraidWord& b);

// Bit value that produces the orientation-respecting smoothing at a crossing.
inline int oriented_bit(const Crossing& c) { return c.sign > 0 ? 0 : 1; }
Vertex oriented_vertex(const LinkDiagram& d);

enum class CircleOrientation { unknown, clockwise, counterclockwise };

// Horizontal pieces of a smoothing in the canonical embedding. Vertical pieces
// all sit at integer x, so an upward ray at non-integer x only meets these.
struct HorizontalPiece {
  double y;
  double x_lo;
  double x_hi;
  int circle;
};

struct Smoothing {
  Vertex vertex = 0;
  int circle_count = 0;
  std::vector<int> circle_of_edge;
  // Filled only when the diagram carries a braid embedding.
  std::vector<int> depth;
  std::vector<int> parent;  // -1 for outermost circles
  std::vector<CircleOrientation> orientation;
  std::vector<HorizontalPiece> pieces;

  bool has_geometry() const { return !depth.empty() || circle_count == 0; }
};

// Circles of the given resolution. Circle ids are assigned in order of the
// smallest edge id they contain.
Smoothing resolve(const LinkDiagram& d, Vertex vertex);
Smoothing oriented_resolution(const LinkDiagram& d);

// Number of horizontal pieces strictly above (x, y) whose span contains x.
// Restricted to `circle` when circle >= 0.
int ray_crossings(const Smoothing& s, double x, double y, int circle = -1);

struct ClassicalInvariants {
  enum class Source { from_braid, from_legendrian };
  int sl = 0;
  int tb = 0;
  int r = 0;
  Source source = Source::from_braid;
};

ClassicalInvariants classical_from_legendrian(int tb, int r);
ClassicalInvariants classical_from_braid(const BraidWord& b);

}  // namespace kholag
