#include "kholag/cobordism.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>

#include "kholag/error.hpp"
#include "kholag/lee.hpp"
#include "kholag/transverse.hpp"

namespace kholag {

// ---------------------------------------------------------------- ChainMap

ChainMap::ChainMap(std::shared_ptr<const CubeComplex> source, std::shared_ptr<const CubeComplex> target,
                   std::vector<SparseMatrix> matrices, int quantum_shift)
    : source_(std::move(source)), target_(std::move(target)), matrices_(std::move(matrices)), shift_(quantum_shift) {
  const FilteredComplex& s = source_->complex();
  const FilteredComplex& t = target_->complex();
  if (source_->theory() != target_->theory()) throw IntegrityError("chain map between different theories");
  if (static_cast<int>(matrices_.size()) != s.max_degree() - s.min_degree() + 1)
    throw IntegrityError("chain map has the wrong number of components");
  for (int j = s.min_degree(); j <= s.max_degree(); ++j) {
    const SparseMatrix& f = matrices_[j - s.min_degree()];
    if (f.rows() != t.size(j) || f.cols() != s.size(j)) throw IntegrityError("chain map component has the wrong shape");
    const auto& qs = s.quantum(j);
    const auto& qt = t.quantum(j);
    for (int c = 0; c < f.cols(); ++c)
      for (const auto& e : f.column(c)) {
        const int drift = qt[e.row] - qs[c] - shift_;
        if (drift < 0 || (source_->theory() == Theory::khovanov && drift != 0))
          throw IntegrityError("chain map does not respect the quantum filtration shift");
      }
  }
  for (int j = s.min_degree() - 1; j <= s.max_degree(); ++j) {
    if (!(t.differential(j) * matrix(j) == matrix(j + 1) * s.differential(j)))
      throw IntegrityError("map does not commute with the differentials in degree " + std::to_string(j));
  }
}

SparseMatrix ChainMap::matrix(int j) const {
  const FilteredComplex& s = source_->complex();
  if (s.has_degree(j)) return matrices_[j - s.min_degree()];
  return SparseMatrix(target_->complex().size(j), 0);
}

Chain ChainMap::apply(const Chain& z) const {
  const SparseMatrix f = matrix(z.degree);
  if (static_cast<int>(z.coeffs.size()) != f.cols()) throw DomainError("chain does not belong to the source complex");
  return Chain{z.degree, f.apply(z.coeffs)};
}

ChainMap ChainMap::identity(std::shared_ptr<const CubeComplex> c) {
  std::vector<SparseMatrix> m;
  for (int j = c->complex().min_degree(); j <= c->complex().max_degree(); ++j)
    m.push_back(SparseMatrix::identity(c->complex().size(j)));
  return ChainMap(c, c, std::move(m), 0);
}

ChainMap compose(const ChainMap& first, const ChainMap& next) {
  if (first.target_ptr() != next.source_ptr() &&
      !(first.target().diagram() == next.source().diagram() && first.target().theory() == next.source().theory()))
    throw DomainError("chain maps are not composable");
  const FilteredComplex& s = first.source().complex();
  std::vector<SparseMatrix> m;
  for (int j = s.min_degree(); j <= s.max_degree(); ++j) m.push_back(next.matrix(j) * first.matrix(j));
  return ChainMap(first.source_ptr(), next.target_ptr(), std::move(m), first.quantum_shift() + next.quantum_shift());
}

std::pair<int, int> map_bidegree(const ChainMap& f) {
  const FilteredComplex& s = f.source().complex();
  const FilteredComplex& t = f.target().complex();
  for (int j = s.min_degree(); j <= s.max_degree(); ++j) {
    const SparseMatrix m = f.matrix(j);
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& e : m.column(c))
        if (t.quantum(j)[e.row] - s.quantum(j)[c] != f.quantum_shift() && f.source().theory() == Theory::khovanov)
          throw IntegrityError("Khovanov movie map is not homogeneous of its recorded degree");
  }
  return {f.quantum_shift(), 0};
}

// ---------------------------------------------------------------- helpers

namespace {

using Piece = std::pair<int, int>;  // (level, position)
using PieceMap = std::function<std::optional<Piece>(int level, int position)>;

const BraidEmbedding& embedding_of(const CubeComplex& c) {
  const auto& e = c.diagram().embedding();
  if (!e) throw DomainError("cobordism maps need braid closures");
  return *e;
}

// Circle of `to` at vertex `vt` containing the image of each circle of
// `from` at vertex `vf`; -1 when no piece of the circle has an image.
std::vector<int> match_circles(const CubeComplex& from, Vertex vf, const CubeComplex& to, Vertex vt,
                               const PieceMap& pm) {
  std::vector<int> out(from.circle_count(vf), -1);
  if (from.diagram().is_empty()) return out;
  const auto& ef = embedding_of(from);
  const auto& et = to.diagram().is_empty() ? ef : embedding_of(to);
  for (int t = 0; t < ef.levels; ++t)
    for (int k = 0; k < ef.braid.strands; ++k) {
      const auto img = pm(t, k);
      if (!img) continue;
      const int cf = from.circle_of_edge(vf, ef.piece(t, k));
      const int ct = to.circle_of_edge(vt, et.piece(img->first, img->second));
      if (out[cf] >= 0 && out[cf] != ct) throw IntegrityError("inconsistent circle correspondence");
      out[cf] = ct;
    }
  return out;
}

int circle_of_piece(const CubeComplex& c, Vertex v, int level, int position) {
  const auto& e = embedding_of(c);
  return c.circle_of_edge(v, e.piece(level % e.levels, position));
}

Labels relabel(Labels x, const std::vector<int>& cmap) {
  Labels y = 0;
  for (std::size_t i = 0; i < cmap.size(); ++i)
    if (cmap[i] >= 0 && ((x >> i) & 1U)) y |= Labels{1} << cmap[i];
  return y;
}

bool bit(Labels x, int c) { return (x >> c) & 1U; }

// Action of X on circle c: returns the new labels or nothing when X kills it.
std::optional<Labels> act_x(Theory th, Labels y, int c) {
  if (bit(y, c)) return y & ~(Labels{1} << c);
  if (th == Theory::lee) return y | (Labels{1} << c);
  return std::nullopt;
}

// Removes bit positions `at` .. `at + count - 1`, shifting higher bits down.
Vertex drop_bits(Vertex v, int at, int count) {
  const Vertex low = v & ((Vertex{1} << at) - 1);
  return low | ((v >> (at + count)) << at);
}

int sign_of_bits_from(Vertex v, int from) { return std::popcount(v >> from) % 2 ? -1 : 1; }

class MapBuilder {
 public:
  MapBuilder(const CubeComplex& s, const CubeComplex& t) : s_(s), t_(t) {
    const auto& cs = s.complex();
    for (int j = cs.min_degree(); j <= cs.max_degree(); ++j) m_.emplace_back(t.complex().size(j), cs.size(j));
  }
  void add(Vertex vs, Labels xs, Vertex vt, Labels yt, std::int64_t c) {
    const int j = s_.homological_degree(vs);
    if (t_.homological_degree(vt) != j) throw IntegrityError("elementary map changes homological degree");
    m_[j - s_.complex().min_degree()].add(t_.generator_index(vt, yt), s_.generator_index(vs, xs), c);
  }
  std::vector<SparseMatrix> take() { return std::move(m_); }

 private:
  const CubeComplex& s_;
  const CubeComplex& t_;
  std::vector<SparseMatrix> m_;
};

Labels label_count(const CubeComplex& c, Vertex v) { return Labels{1} << c.circle_count(v); }

// ---------------------------------------------------------------- per-move maps

// Top frame has an extra free strand n on the right (a birth read downward):
// counit on its circle.
std::vector<SparseMatrix> birth_map(const CubeComplex& above, const CubeComplex& below) {
  MapBuilder b(above, below);
  const int n = embedding_of(above).braid.strands - 1;
  const PieceMap pm = [&](int t, int k) -> std::optional<Piece> {
    if (k >= n) return std::nullopt;
    return Piece{t, k};
  };
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    const auto cmap = match_circles(above, v, below, v, pm);
    const int o = circle_of_piece(above, v, 0, n);
    for (Labels x = 0; x < label_count(above, v); ++x)
      if (!bit(x, o)) b.add(v, x, v, relabel(x, cmap), 1);
  }
  return b.take();
}

// Bottom frame has the extra free strand (a death read downward): unit.
std::vector<SparseMatrix> death_map(const CubeComplex& above, const CubeComplex& below) {
  MapBuilder b(above, below);
  const int n = embedding_of(below).braid.strands - 1;
  const PieceMap pm = [](int t, int k) -> std::optional<Piece> { return Piece{t, k}; };
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    const auto cmap = match_circles(above, v, below, v, pm);
    const Labels o = Labels{1} << circle_of_piece(below, v, 0, n);
    for (Labels x = 0; x < label_count(above, v); ++x) b.add(v, x, v, relabel(x, cmap) | o, 1);
  }
  return b.take();
}

// Top frame has one more letter, at index P.
PieceMap inserted_letters_map(int P, int count, int levels_below) {
  return [=](int t, int k) -> std::optional<Piece> {
    if (t <= P) return Piece{t % levels_below, k};
    if (t <= P + count) return Piece{P % levels_below, k};
    return Piece{t - count, k};
  };
}

std::vector<SparseMatrix> band_map(const CubeComplex& above, const CubeComplex& below, const Move& m) {
  MapBuilder b(above, below);
  const int P = static_cast<int>(m.position);
  const int lb = embedding_of(below).levels;
  const PieceMap pm = inserted_letters_map(P, 1, lb);
  const Theory th = above.theory();
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    const bool vertical = ((v >> P) & 1U) == (m.sign > 0 ? 0U : 1U);
    if (!vertical) continue;
    const Vertex w = drop_bits(v, P, 1);
    const auto cmap = match_circles(above, v, below, w, pm);
    if (m.sign > 0) {
      // Projection onto the oriented resolution of the new crossing.
      for (Labels x = 0; x < label_count(above, v); ++x) b.add(v, x, w, relabel(x, cmap), 1);
      continue;
    }
    // Negative half-twist: X on the left strand minus X on the right strand.
    const int theta = sign_of_bits_from(v, P + 1);
    const int cl = circle_of_piece(below, w, P, m.generator - 1);
    const int cr = circle_of_piece(below, w, P, m.generator);
    if (cl == cr) continue;
    for (Labels x = 0; x < label_count(above, v); ++x) {
      const Labels y = relabel(x, cmap);
      if (auto l = act_x(th, y, cl)) b.add(v, x, w, *l, theta);
      if (auto r = act_x(th, y, cr)) b.add(v, x, w, *r, -theta);
    }
  }
  return b.take();
}

// Top frame is the bottom one rotated by r letters.
std::vector<SparseMatrix> conjugate_map(const CubeComplex& above, const CubeComplex& below, int r) {
  MapBuilder b(above, below);
  const int L = below.diagram().crossing_count();
  if (L == 0) r = 0;
  else r = ((r % L) + L) % L;
  const PieceMap pm = [&](int t, int k) -> std::optional<Piece> {
    if (L == 0) return Piece{t, k};
    return Piece{(t + r) % L, k};
  };
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    Vertex w = 0;
    std::vector<int> order;
    for (int i = 0; i < L; ++i)
      if ((v >> i) & 1U) {
        const int target = (i + r) % L;
        w |= Vertex{1} << target;
        order.push_back(target);
      }
    int inversions = 0;
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t c = a + 1; c < order.size(); ++c)
        if (order[a] > order[c]) ++inversions;
    const auto cmap = match_circles(above, v, below, w, pm);
    for (Labels x = 0; x < label_count(above, v); ++x) b.add(v, x, w, relabel(x, cmap), inversions % 2 ? -1 : 1);
  }
  return b.take();
}

// Top frame = bottom with an extra strand n and final letter sign*n.
// sign +1 (Markov stabilization): counit on the new circle of the oriented
// resolution. sign -1: projection killing x (x) X_O + (X_a x) (x) 1_O.
std::vector<SparseMatrix> stabilize_map(const CubeComplex& above, const CubeComplex& below, int sign) {
  MapBuilder b(above, below);
  const int L = below.diagram().crossing_count();
  const int n = embedding_of(below).braid.strands;
  const int lb = embedding_of(below).levels;
  const PieceMap pm = [&](int t, int k) -> std::optional<Piece> {
    if (k >= n) return std::nullopt;
    return Piece{t % lb, k};
  };
  const Theory th = above.theory();
  const Vertex vertical = sign > 0 ? 0 : 1;
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    if (((v >> L) & 1U) != vertical) continue;
    const Vertex w = drop_bits(v, L, 1);
    const auto cmap = match_circles(above, v, below, w, pm);
    const int o = circle_of_piece(above, v, 0, n);
    const int a = circle_of_piece(below, w, 0, n - 1);
    for (Labels x = 0; x < label_count(above, v); ++x) {
      const Labels y = relabel(x, cmap);
      if (sign > 0) {
        if (!bit(x, o)) b.add(v, x, w, y, 1);
      } else if (bit(x, o)) {
        b.add(v, x, w, y, 1);
      } else if (auto z = act_x(th, y, a)) {
        b.add(v, x, w, *z, -1);
      }
    }
  }
  return b.take();
}

// Bottom frame = top with the extra strand and letter sign*n; inverse of the
// previous map up to homotopy.
std::vector<SparseMatrix> destabilize_map(const CubeComplex& above, const CubeComplex& below, int sign) {
  MapBuilder b(above, below);
  const int L = above.diagram().crossing_count();
  const int n = embedding_of(above).braid.strands;
  const PieceMap pm = [](int t, int k) -> std::optional<Piece> { return Piece{t, k}; };
  const Theory th = above.theory();
  for (Vertex v = 0; v < static_cast<Vertex>(above.vertex_count()); ++v) {
    const Vertex w = sign > 0 ? v : (v | (Vertex{1} << L));
    const auto cmap = match_circles(above, v, below, w, pm);
    const Labels o = Labels{1} << circle_of_piece(below, w, 0, n);
    const int a = cmap.empty() ? -1 : cmap[circle_of_piece(above, v, 0, n - 1)];
    for (Labels x = 0; x < label_count(above, v); ++x) {
      const Labels y = relabel(x, cmap);
      if (sign < 0) {
        b.add(v, x, w, y | o, 1);
        continue;
      }
      b.add(v, x, w, y, 1);
      if (auto z = act_x(th, y, a)) b.add(v, x, w, *z | o, -1);
    }
  }
  return b.take();
}

// ---------------------------------------------------------------- R2 by elimination

struct Reduction {
  // For each surviving generator: F row (original -> val) and G column.
  std::vector<std::vector<int>> survivors;  // per degree, generator indices
  std::vector<std::map<int, std::map<int, std::int64_t>>> f_rows, g_cols;
  std::vector<std::map<int, std::map<int, std::int64_t>>> d_cols;  // reduced differential, by column
};

// Cancels the two non-oriented local states of the adjacent crossings P, P+1
// (letters s, -s) of c, leaving the generators whose local state is the
// oriented one. Phase 1 pairs the lowest state with the both-horizontal state
// whose small circle carries X; phase 2 pairs the remaining both-horizontal
// generators with the highest state.
Reduction reduce_r2(const CubeComplex& c, int P, int letter) {
  const FilteredComplex& cx = c.complex();
  const int j0 = cx.min_degree();
  const int nd = cx.max_degree() - j0 + 1;
  const int g = std::abs(letter);

  struct Gen {
    Vertex v;
    Labels x;
  };
  std::vector<std::vector<Gen>> gens(nd);
  for (int k = 0; k < nd; ++k) gens[k].resize(cx.size(j0 + k));
  for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v)
    for (Labels x = 0; x < label_count(c, v); ++x)
      gens[c.homological_degree(v) - j0][c.generator_index(v, x)] = Gen{v, x};

  const unsigned oa = letter > 0 ? 0U : 1U, ob = 1U - oa;
  enum State { low, oriented, both_horizontal, high };
  auto state = [&](Vertex v) {
    const unsigned a = (v >> P) & 1U, b = (v >> (P + 1)) & 1U;
    if (a == oa && b == ob) return oriented;
    if (a != oa && b != ob) return both_horizontal;
    return a + b == 0 ? low : high;
  };
  auto small_circle_x = [&](const Gen& gn) { return !bit(gn.x, circle_of_piece(c, gn.v, P + 1, g - 1)); };

  // Mutable copy of the differential, by column and by row.
  std::vector<std::map<int, std::map<int, std::int64_t>>> cols(nd), rows(nd);
  for (int k = 0; k + 1 < nd; ++k) {
    const SparseMatrix d = cx.differential(j0 + k);
    for (int col = 0; col < d.cols(); ++col)
      for (const auto& e : d.column(col)) {
        cols[k][col][e.row] = e.value;
        rows[k + 1][e.row][col] = e.value;
      }
  }
  std::vector<std::vector<char>> alive(nd);
  Reduction red;
  red.f_rows.resize(nd);
  red.g_cols.resize(nd);
  for (int k = 0; k < nd; ++k) {
    alive[k].assign(gens[k].size(), 1);
    for (int i = 0; i < static_cast<int>(gens[k].size()); ++i) {
      red.f_rows[k][i][i] = 1;
      red.g_cols[k][i][i] = 1;
    }
  }
  auto set_entry = [&](int k, int col, int row, std::int64_t val) {
    if (val == 0) {
      cols[k][col].erase(row);
      rows[k + 1][row].erase(col);
    } else {
      cols[k][col][row] = val;
      rows[k + 1][row][col] = val;
    }
  };
  auto remove_gen = [&](int k, int i) {
    if (k + 1 < nd)
      for (auto [r, val] : cols[k][i]) rows[k + 1][r].erase(i);
    cols[k].erase(i);
    if (k > 0)
      for (auto [cl, val] : rows[k][i]) cols[k - 1][cl].erase(i);
    rows[k].erase(i);
    alive[k][i] = 0;
    red.f_rows[k].erase(i);
    red.g_cols[k].erase(i);
  };
  auto add_scaled = [](std::map<int, std::int64_t>& dst, const std::map<int, std::int64_t>& src, std::int64_t s) {
    for (auto [key, val] : src) {
      auto& e = dst[key];
      e += s * val;
      if (e == 0) dst.erase(key);
    }
  };
  auto eliminate = [&](int k, int x, int y) {
    const std::int64_t u = cols[k][x][y];  // +-1, so u^{-1} = u
    const auto into_y = rows[k + 1][y];
    const auto from_x = cols[k][x];
    for (auto [a, dya] : into_y) {
      if (a == x) continue;
      for (auto [bb, dbx] : from_x) {
        if (bb == y) continue;
        const std::int64_t old = cols[k][a].count(bb) ? cols[k][a][bb] : 0;
        set_entry(k, a, bb, old - dbx * u * dya);
      }
      add_scaled(red.g_cols[k][a], red.g_cols[k][x], -u * dya);
    }
    for (auto [bb, dbx] : from_x)
      if (bb != y) add_scaled(red.f_rows[k + 1][bb], red.f_rows[k + 1][y], -dbx * u);
    remove_gen(k, x);
    remove_gen(k + 1, y);
  };

  auto phase = [&](auto source_ok, auto target_ok) {
    for (int k = 0; k + 1 < nd; ++k)
      for (int x = 0; x < static_cast<int>(gens[k].size()); ++x) {
        if (!alive[k][x] || !source_ok(gens[k][x])) continue;
        for (auto [y, val] : cols[k][x])
          if ((val == 1 || val == -1) && target_ok(gens[k + 1][y])) {
            eliminate(k, x, y);
            break;
          }
      }
  };
  phase([&](const Gen& s) { return state(s.v) == low; },
        [&](const Gen& t) { return state(t.v) == both_horizontal && small_circle_x(t); });
  phase([&](const Gen& s) { return state(s.v) == both_horizontal && !small_circle_x(s); },
        [&](const Gen& t) { return state(t.v) == high; });

  red.survivors.resize(nd);
  for (int k = 0; k < nd; ++k)
    for (int i = 0; i < static_cast<int>(gens[k].size()); ++i) {
      if (!alive[k][i]) continue;
      if (state(gens[k][i].v) != oriented) throw IntegrityError("R2 reduction left a non-oriented generator");
      red.survivors[k].push_back(i);
    }
  red.d_cols = std::move(cols);
  return red;
}

struct R2Identification {
  // For each generator of the small complex: (degree offset in big, index in big, sign).
  std::vector<std::vector<std::tuple<int, int, int>>> to_big;
};

// Matches the surviving generators of the big complex with the generators of
// the small one and checks that the reduced differential agrees.
R2Identification identify_r2(const CubeComplex& big, const Reduction& red, const CubeComplex& small, int P) {
  const FilteredComplex& bx = big.complex();
  const FilteredComplex& sx = small.complex();
  const int lb = embedding_of(small).levels;
  const PieceMap pm = inserted_letters_map(P, 2, lb);
  R2Identification id;
  id.to_big.resize(sx.max_degree() - sx.min_degree() + 1);
  for (int k = 0; k < static_cast<int>(id.to_big.size()); ++k) id.to_big[k].assign(sx.size(sx.min_degree() + k), {-1, -1, 0});

  // Index the survivors by (vertex, labels) of the big complex.
  std::size_t count = 0;
  for (int k = 0; k < static_cast<int>(red.survivors.size()); ++k) count += red.survivors[k].size();
  std::size_t matched = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(big.vertex_count()); ++v) {
    const unsigned a = (v >> P) & 1U, b = (v >> (P + 1)) & 1U;
    if (a == b) continue;
    const Vertex w = drop_bits(v, P, 2);
    const auto& ea = embedding_of(big);
    // Only the oriented local state survives; skip the other mixed state.
    const int letter = ea.braid.letters[P];
    if (a != (letter > 0 ? 0U : 1U)) continue;
    const auto cmap = match_circles(big, v, small, w, pm);
    const int theta = sign_of_bits_from(v, P + 2);
    const int kb = big.homological_degree(v) - bx.min_degree();
    const int ks = small.homological_degree(w) - sx.min_degree();
    if (big.homological_degree(v) != small.homological_degree(w)) throw IntegrityError("R2 degree mismatch");
    for (Labels x = 0; x < label_count(big, v); ++x) {
      id.to_big[ks][small.generator_index(w, relabel(x, cmap))] = {kb, big.generator_index(v, x), theta};
      ++matched;
    }
  }
  if (matched != count) throw IntegrityError("R2 survivors do not match the smaller diagram");

  // Reduced differential must agree with the small differential.
  for (int j = sx.min_degree(); j <= sx.max_degree(); ++j) {
    const SparseMatrix d = sx.differential(j);
    const int ks = j - sx.min_degree();
    for (int col = 0; col < d.cols(); ++col) {
      const auto [kb, ib, sb] = id.to_big[ks][col];
      std::map<int, std::int64_t> expect;
      for (const auto& e : d.column(col)) {
        const auto [kb2, ib2, sb2] = id.to_big[ks + 1][e.row];
        expect[ib2] = e.value * sb * sb2;
      }
      const auto it = red.d_cols[kb].find(ib);
      const std::map<int, std::int64_t> got = it == red.d_cols[kb].end() ? std::map<int, std::int64_t>{} : it->second;
      if (got != expect) throw IntegrityError("R2 reduced differential differs from the smaller diagram");
    }
  }
  return id;
}

std::vector<SparseMatrix> r2_map(const CubeComplex& above, const CubeComplex& below, const Move& m) {
  const int P = static_cast<int>(m.position);
  const int letter = m.sign * m.generator;
  if (!m.inverse) {
    // above has the pair: projection F.
    const Reduction red = reduce_r2(above, P, letter);
    const R2Identification id = identify_r2(above, red, below, P);
    const FilteredComplex& ax = above.complex();
    const FilteredComplex& bx = below.complex();
    std::vector<SparseMatrix> out;
    for (int j = ax.min_degree(); j <= ax.max_degree(); ++j) out.emplace_back(bx.size(j), ax.size(j));
    for (int ks = 0; ks < static_cast<int>(id.to_big.size()); ++ks)
      for (int s = 0; s < static_cast<int>(id.to_big[ks].size()); ++s) {
        const auto [kb, ib, sign] = id.to_big[ks][s];
        const int j = bx.min_degree() + ks;
        for (auto [orig, val] : red.f_rows[kb].at(ib)) out[j - ax.min_degree()].add(s, orig, sign * val);
      }
    return out;
  }
  // below has the pair: inclusion G.
  const Reduction red = reduce_r2(below, P, letter);
  const R2Identification id = identify_r2(below, red, above, P);
  const FilteredComplex& ax = above.complex();
  const FilteredComplex& bx = below.complex();
  std::vector<SparseMatrix> out;
  for (int j = ax.min_degree(); j <= ax.max_degree(); ++j) out.emplace_back(bx.size(j), ax.size(j));
  for (int ks = 0; ks < static_cast<int>(id.to_big.size()); ++ks)
    for (int s = 0; s < static_cast<int>(id.to_big[ks].size()); ++s) {
      const auto [kb, ib, sign] = id.to_big[ks][s];
      const int j = ax.min_degree() + ks;
      for (auto [orig, val] : red.g_cols[kb].at(ib)) out[j - ax.min_degree()].add(orig, s, sign * val);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public

ChainMap elementary_chain_map(const Move& m, std::shared_ptr<const CubeComplex> above,
                              std::shared_ptr<const CubeComplex> below) {
  const auto frame = [](const CubeComplex& c) {
    return c.diagram().is_empty() ? BraidWord::empty_link() : c.diagram().braid();
  };
  if (apply_move(m, frame(*below)) != frame(*above))
    throw DomainError(m.describe() + " does not relate the given diagrams");
  std::vector<SparseMatrix> mats;
  switch (m.type) {
    case Move::Type::birth: mats = birth_map(*above, *below); break;
    case Move::Type::death: mats = death_map(*above, *below); break;
    case Move::Type::saddle:
    case Move::Type::band_positive: mats = band_map(*above, *below, m); break;
    case Move::Type::braid_conjugate: mats = conjugate_map(*above, *below, m.rotation); break;
    case Move::Type::markov_stabilize_positive: mats = stabilize_map(*above, *below, 1); break;
    case Move::Type::markov_destabilize_positive: mats = destabilize_map(*above, *below, 1); break;
    case Move::Type::reidemeister:
      switch (m.kind) {
        case Move::Reidemeister::r1:
          mats = m.inverse ? destabilize_map(*above, *below, m.sign) : stabilize_map(*above, *below, m.sign);
          break;
        case Move::Reidemeister::r2: mats = r2_map(*above, *below, m); break;
        case Move::Reidemeister::r3: throw DomainError("R3 chain maps are not implemented; use R2 and conjugation");
      }
      break;
  }
  return ChainMap(std::move(above), std::move(below), std::move(mats), m.euler());
}

ChainMap compose_movie_map(const Movie& movie, Theory theory) {
  movie.validate();
  std::vector<std::shared_ptr<const CubeComplex>> cx;
  for (const auto& f : movie.frames) cx.push_back(std::make_shared<const CubeComplex>(braid_closure(f), theory));
  ChainMap total = ChainMap::identity(cx.back());
  for (std::size_t t = movie.moves.size(); t-- > 0;)
    total = compose(total, elementary_chain_map(movie.moves[t], cx[t + 1], cx[t]));
  if (total.quantum_shift() != movie.euler_characteristic())
    throw IntegrityError("movie map shift differs from the Euler characteristic");
  return total;
}

const char* to_string(Functoriality f) {
  switch (f) {
    case Functoriality::preserved_plus: return "preserved(+1)";
    case Functoriality::preserved_minus: return "preserved(-1)";
    case Functoriality::violated: return "violated";
  }
  return "?";
}

namespace {

Functoriality compare_classes(const FilteredComplex& c, const Chain& image, const Chain& expected) {
  if (class_is_zero(c, image - expected)) return Functoriality::preserved_plus;
  if (class_is_zero(c, image + expected)) return Functoriality::preserved_minus;
  return Functoriality::violated;
}

}  // namespace

FunctorialityResult check_functoriality(const Movie& movie) {
  const ChainMap f = compose_movie_map(movie, Theory::khovanov);
  FunctorialityResult r;
  r.hypotheses_met = movie.ascending_positive();
  const TransverseClass top = psi_cycle(f.source().diagram(), f.source());
  const TransverseClass bottom = psi_cycle(f.target().diagram(), f.target());
  r.image = f.apply(top.chain);
  r.verdict = compare_classes(f.target().complex(), r.image, bottom.chain);
  return r;
}

long check_filling_value(const Movie& movie) {
  if (!movie.bottom().is_empty_link()) throw DomainError("filling value needs a movie starting at the empty link");
  const FunctorialityResult r = check_functoriality(movie);
  return static_cast<long>(r.image.coeffs.at(0));
}

FunctorialityResult check_filtered_functoriality(const Movie& movie, int p, int q) {
  if (p >= q) throw DomainError("window needs p < q");
  const ChainMap f = compose_movie_map(movie, Theory::lee);
  FunctorialityResult r;
  r.hypotheses_met = movie.ascending_positive();
  const TransverseClass top = psi_tilde(f.source().diagram(), f.source());
  const TransverseClass bottom = psi_tilde(f.target().diagram(), f.target());
  const Subquotient w = gr_pq(f.target(), bottom.sl, p, q);
  r.image = w.project(f.apply(top.chain));
  r.verdict = compare_classes(w.complex, r.image, w.project(bottom.chain));
  return r;
}

}  // namespace kholag
