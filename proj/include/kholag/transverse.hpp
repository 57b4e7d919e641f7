#pragma once

#include "kholag/complex.hpp"
#include "kholag/diagram.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"

namespace kholag {

enum class Parity { even, odd };

// Where on a Seifert circle the parity ray starts. The point is pushed to the
// left of the circle's orientation and a vertical ray is cast upward.
struct Basepoint {
  enum class Kind {
    topmost,     // the top closing arc (canonical choice)
    strand,      // upward strand piece at `level`
    return_arc,  // downward closing arc on the right, at height `level`
    bottom_arc,  // bottom closing arc
  };
  Kind kind = Kind::topmost;
  int level = 0;
};

// Parity of the number of times the left-pushed ray meets the circles of the
// oriented resolution. Requires a braid closure and its oriented resolution.
Parity circle_parity(const LinkDiagram& d, const Smoothing& oriented, int circle, Basepoint at = {});

struct TransverseClass {
  enum class Kind { psi, psi_tilde, psi_pq };
  Kind kind = Kind::psi;
  int p = 0, q = 0;  // window, for psi_pq
  Chain chain;
  int sl = 0;
  int homological_degree = 0;
  int quantum_anchor = 0;
};

// All-v_- labelling of the oriented resolution in the Khovanov complex.
TransverseClass psi_cycle(const LinkDiagram& d, const CubeComplex& khovanov);
TransverseClass psi_cycle(const LinkDiagram& d);

// Oriented resolution with circle C labelled v_- + v_+ (even parity) or
// v_- - v_+ (odd parity), in the Lee complex.
TransverseClass psi_tilde(const LinkDiagram& d, const CubeComplex& lee);
TransverseClass psi_tilde(const LinkDiagram& d);

struct WindowClass {
  TransverseClass cls;
  Subquotient window;
  WindowInfo info;
};

WindowClass psi_pq(const LinkDiagram& d, const CubeComplex& lee, int p, int q);
WindowClass psi_pq(const LinkDiagram& d, int p, int q);

bool psi_vanishes(const LinkDiagram& d);
bool psi_pq_vanishes(const LinkDiagram& d, int p, int q);

}  // namespace kholag
