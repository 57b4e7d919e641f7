#include "kholag/transverse.hpp"

#include "kholag/error.hpp"

namespace kholag {

namespace {

const BraidEmbedding& require_braid(const LinkDiagram& d) {
  if (!d.embedding()) throw DomainError("transverse invariants need a braid closure diagram");
  return *d.embedding();
}

}  // namespace

Parity circle_parity(const LinkDiagram& d, const Smoothing& s, int circle, Basepoint at) {
  const auto& emb = require_braid(d);
  if (s.vertex != oriented_vertex(d)) throw DomainError("circle parity is defined on the oriented resolution");
  const int n = emb.braid.strands;
  // In the oriented resolution of a braid closure circle k is the k-th strand.
  int k = -1;
  for (int j = 0; j < n; ++j)
    if (s.circle_of_edge[emb.piece(0, j)] == circle) k = j;
  if (k < 0) throw DomainError("no such circle");

  double x = 0, y = 0;
  switch (at.kind) {
    case Basepoint::Kind::topmost:  // travelling right along the top: left is up
      x = k + 0.5;
      y = emb.levels + n - k + 0.5;
      break;
    case Basepoint::Kind::strand:  // travelling up: left is -x
      x = k - 0.5;
      y = at.level;
      break;
    case Basepoint::Kind::return_arc:  // travelling down: left is +x
      x = 2.0 * n - 1 - k + 0.5;
      y = at.level;
      break;
    case Basepoint::Kind::bottom_arc:  // travelling left: left is down
      x = k + 0.5;
      y = -(n - k) - 0.5;
      break;
  }
  return ray_crossings(s, x, y) % 2 ? Parity::odd : Parity::even;
}

TransverseClass psi_cycle(const LinkDiagram& d, const CubeComplex& kh) {
  const auto& emb = require_braid(d);
  TransverseClass t;
  t.kind = TransverseClass::Kind::psi;
  t.sl = emb.braid.is_empty_link() ? 0 : self_linking(emb.braid);
  t.quantum_anchor = t.sl;
  const Vertex v = oriented_vertex(d);
  t.chain = kh.generator(v, 0);
  if (kh.homological_degree(v) != 0 || kh.quantum_degree(v, 0) != t.sl)
    throw IntegrityError("psi is not in bidegree (sl, 0)");
  if (!is_cycle(kh.complex(), t.chain)) throw IntegrityError("psi is not a cycle");
  return t;
}

TransverseClass psi_cycle(const LinkDiagram& d) { return psi_cycle(d, build_khovanov_complex(d)); }

TransverseClass psi_tilde(const LinkDiagram& d, const CubeComplex& lee) {
  const auto& emb = require_braid(d);
  TransverseClass t;
  t.kind = TransverseClass::Kind::psi_tilde;
  t.sl = emb.braid.is_empty_link() ? 0 : self_linking(emb.braid);
  t.quantum_anchor = t.sl;
  const Smoothing s = oriented_resolution(d);
  Labels odd = 0;
  for (int c = 0; c < s.circle_count; ++c)
    if (circle_parity(d, s, c) == Parity::odd) odd |= Labels{1} << c;
  t.chain = lee_product_chain(lee, s.vertex, odd);
  if (!is_cycle(lee.complex(), t.chain)) throw IntegrityError("psi-tilde is not a cycle in the Lee complex");
  return t;
}

TransverseClass psi_tilde(const LinkDiagram& d) { return psi_tilde(d, build_lee_complex(d)); }

WindowClass psi_pq(const LinkDiagram& d, const CubeComplex& lee, int p, int q) {
  TransverseClass tilde = psi_tilde(d, lee);
  WindowClass w{tilde, gr_pq(lee, tilde.sl, p, q), window_info(p, q)};
  w.cls.kind = TransverseClass::Kind::psi_pq;
  w.cls.p = p;
  w.cls.q = q;
  w.cls.chain = w.window.project(tilde.chain);
  return w;
}

WindowClass psi_pq(const LinkDiagram& d, int p, int q) { return psi_pq(d, build_lee_complex(d), p, q); }

bool psi_vanishes(const LinkDiagram& d) {
  const CubeComplex kh = build_khovanov_complex(d);
  return class_is_zero(kh.complex(), psi_cycle(d, kh).chain);
}

bool psi_pq_vanishes(const LinkDiagram& d, int p, int q) {
  const WindowClass w = psi_pq(d, p, q);
  return class_is_zero(w.window.complex, w.cls.chain);
}

}  // namespace kholag
