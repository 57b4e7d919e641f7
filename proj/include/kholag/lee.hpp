#pragma once

#include "kholag/complex.hpp"
#include "kholag/diagram.hpp"
#include "kholag/khovanov.hpp"

namespace kholag {

// Lee deformation: the merge gains v_- (x) v_- -> v_+ and the split gains
// v_- -> v_- (x) v_- + v_+ (x) v_+, i.e. the Frobenius algebra Q[X]/(X^2 - 1)
// with v_+ = 1 and v_- = X. Both extra terms raise quantum degree by 4.
CubeComplex build_lee_complex(const LinkDiagram& d);

// Sum over label masks x of (-1)^{|x & minus_mask|} (v, x): circle c carries
// v_- + v_+ when its bit in minus_mask is clear and v_- - v_+ when set.
Chain lee_product_chain(const CubeComplex& c, Vertex v, Labels minus_mask);

// Which reading of the window (p, q) a query falls under. The transverse
// invariants psi_{p,q} are defined for p <= 0 < q; the vanishing obstruction
// is quantified over 0 <= p < q. Any p < q is computable.
struct WindowInfo {
  bool defining_range = false;   // p <= 0 < q
  bool vanishing_range = false;  // 0 <= p < q
};
WindowInfo window_info(int p, int q);

// gr_{p,q} = F_{sl+2p} / F_{sl+2q} of the Lee complex. DomainError if p >= q.
Subquotient gr_pq(const CubeComplex& lee, int sl, int p, int q);

struct SInvariantResult {
  int s = 0;
  int s_min = 0;
  int s_max = 0;
};

// Rasmussen's invariant from the filtration gradings of rational Lee
// homology classes. DomainError unless d has exactly one component.
SInvariantResult s_invariant(const LinkDiagram& d);

}  // namespace kholag
