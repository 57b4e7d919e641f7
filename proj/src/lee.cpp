#include "kholag/lee.hpp"

#include <bit>
#include <climits>
#include <set>

#include "kholag/error.hpp"
#include "kholag/snf.hpp"

namespace kholag {

CubeComplex build_lee_complex(const LinkDiagram& d) { return CubeComplex(d, Theory::lee); }

Chain lee_product_chain(const CubeComplex& c, Vertex v, Labels minus_mask) {
  Chain z = c.zero_chain(c.homological_degree(v));
  const Labels count = Labels{1} << c.circle_count(v);
  for (Labels x = 0; x < count; ++x) z.coeffs[c.generator_index(v, x)] = std::popcount(x & minus_mask) % 2 ? -1 : 1;
  return z;
}

WindowInfo window_info(int p, int q) { return WindowInfo{p <= 0 && 0 < q, 0 <= p && p < q}; }

Subquotient gr_pq(const CubeComplex& lee, int sl, int p, int q) {
  if (p >= q) throw DomainError("gr_pq needs p < q");
  return subquotient_with_map(lee.complex(), sl + 2 * p, sl + 2 * q);
}

namespace {

// Two-colouring of the oriented resolution in which circles meeting at a
// crossing get different colours. Returns the mask of circles coloured 1.
Labels seifert_colouring(const CubeComplex& lee, Vertex v) {
  const auto& d = lee.diagram();
  const int n = lee.circle_count(v);
  std::vector<std::vector<int>> adj(n);
  for (const auto& c : d.crossings()) {
    const int a = lee.circle_of_edge(v, c.edges[0]);
    const int b = lee.circle_of_edge(v, c.sign > 0 ? c.edges[2] : c.edges[1]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> colour(n, -1);
  Labels mask = 0;
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          throw IntegrityError("Seifert circle graph is not bipartite");
        }
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (colour[i]) mask |= Labels{1} << i;
  return mask;
}

}  // namespace

SInvariantResult s_invariant(const LinkDiagram& d) {
  if (d.component_count() != 1) throw DomainError("the s-invariant is computed for knots only");
  const CubeComplex lee = build_lee_complex(d);
  const FilteredComplex& c = lee.complex();
  const Vertex v = oriented_vertex(d);
  const Labels mask = seifert_colouring(lee, v);
  const Labels all = (Labels{1} << lee.circle_count(v)) - 1;
  const Chain a = lee_product_chain(lee, v, mask);
  const Chain b = lee_product_chain(lee, v, all & ~mask);
  if (!is_cycle(c, a) || !is_cycle(c, b)) throw IntegrityError("Lee canonical generators are not cycles");

  const auto& q = c.quantum(0);
  const SparseMatrix incoming = c.differential(-1);
  std::vector<int> cols(incoming.cols());
  for (int k = 0; k < incoming.cols(); ++k) cols[k] = k;

  // Codimension of F_m H in H: how far a and b stay independent modulo
  // boundaries after discarding everything in filtration level >= m.
  auto codim = [&](int m) {
    std::vector<int> rows;
    for (int k = 0; k < static_cast<int>(q.size()); ++k)
      if (q[k] < m) rows.push_back(k);
    std::vector<std::int64_t> pa, pb;
    for (int r : rows) {
      pa.push_back(a.coeffs[r]);
      pb.push_back(b.coeffs[r]);
    }
    const SparseMatrix proj = incoming.submatrix(rows, cols);
    return rank(proj.with_columns({pa, pb})) - rank(proj);
  };

  if (codim(INT_MAX) != 2) throw IntegrityError("Lee generators do not span two-dimensional homology");
  std::set<int, std::greater<>> levels(q.begin(), q.end());
  SInvariantResult r{0, INT_MIN, INT_MIN};
  for (int m : levels) {
    const int k = codim(m);
    if (k <= 1 && r.s_max == INT_MIN) r.s_max = m;
    if (k == 0 && r.s_min == INT_MIN) {
      r.s_min = m;
      break;
    }
  }
  r.s = (r.s_min + r.s_max) / 2;
  return r;
}

}  // namespace kholag
