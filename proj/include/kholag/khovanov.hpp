#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kholag/complex.hpp"
#include "kholag/diagram.hpp"

namespace kholag {

enum class Theory { khovanov, lee };

// Labels of a cube generator: bit k set means circle k carries v_+ (= 1),
// clear means v_- (= X).
using Labels = std::uint32_t;

// Cube of resolutions of a diagram together with the resulting complex.
// Generators in homological degree j are ordered by vertex (ascending as an
// integer) and then by label mask.
class CubeComplex {
 public:
  CubeComplex(LinkDiagram diagram, Theory theory);

  const LinkDiagram& diagram() const { return diagram_; }
  Theory theory() const { return theory_; }
  const FilteredComplex& complex() const { return complex_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }

  int vertex_count() const { return static_cast<int>(circle_count_.size()); }
  int circle_count(Vertex v) const { return circle_count_[v]; }
  int circle_of_edge(Vertex v, int edge) const { return circles_[v][edge]; }
  int homological_degree(Vertex v) const;
  int quantum_degree(Vertex v, Labels labels) const;
  int generator_index(Vertex v, Labels labels) const { return offset_[v] + static_cast<int>(labels); }

  // Zero chain in the homological degree of vertex v.
  Chain zero_chain(int degree) const;
  // Basis vector for (v, labels).
  Chain generator(Vertex v, Labels labels) const;

 private:
  LinkDiagram diagram_;
  Theory theory_;
  int n_plus_ = 0, n_minus_ = 0;
  std::vector<int> circle_count_;
  std::vector<std::vector<int>> circles_;
  std::vector<int> offset_;
  FilteredComplex complex_;
};

CubeComplex build_khovanov_complex(const LinkDiagram& d);

// Upper bound on the number of crossings accepted by the cube builders.
inline constexpr int kMaxCubeCrossings = 24;

// Khovanov homology of a diagram (bigraded, integral).
BigradedHomology khovanov_homology(const LinkDiagram& d);

// min { i - j : Kh^{i,j} != 0 }. DomainError when H is zero.
int ng_line(const BigradedHomology& h);

bool check_mirror_duality(const BigradedHomology& h_k, const BigradedHomology& h_mirror);

enum class TopVerdict { consistent, obstructed };
TopVerdict top_obstruction(const BigradedHomology& h, int tb_candidate);
const char* to_string(TopVerdict v);

// Graded Euler characteristic sum (-1)^j rank Kh^{i,j} q^i as {i: coefficient}.
std::vector<std::pair<int, std::int64_t>> graded_euler_characteristic(const BigradedHomology& h);

// {"convention": "i=quantum,j=homological", "groups": [{"i":..,"j":..,"rank":..,"torsion":[..]}], "ng_line": C}
std::string homology_to_json(const BigradedHomology& h);
// Aligned table: rows are quantum degrees, columns homological degrees. Cells
// on Ng's line are starred and each row ends with its diagonal range.
std::string homology_grid(const BigradedHomology& h);

}  // namespace kholag
