#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace oracle {

Braid parse(const std::string& text) {
  Braid b;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("braid needs a colon");
  b.strands = std::stoi(text.substr(0, colon));
  std::istringstream rest(text.substr(colon + 1));
  int l;
  while (rest >> l) b.letters.push_back(l);
  return b;
}

namespace {

struct Circles {
  int count = 0;
  std::vector<int> of_piece;  // piece id = level * n + position
};

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

bool vertical_at(int letter, bool bit) { return bit == (letter < 0); }

Circles trace(const Braid& b, std::uint64_t v) {
  const int n = b.strands;
  const int L = static_cast<int>(b.letters.size());
  const int levels = std::max(L, 1);
  std::vector<int> parent(levels * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto join = [&](int t1, int k1, int t2, int k2) {
    parent[find(parent, (t1 % levels) * n + k1)] = find(parent, (t2 % levels) * n + k2);
  };
  for (int t = 0; t < L; ++t) {
    const int g = std::abs(b.letters[t]);
    for (int k = 0; k < n; ++k)
      if (k != g - 1 && k != g) join(t, k, t + 1, k);
    if (vertical_at(b.letters[t], (v >> t) & 1U)) {
      join(t, g - 1, t + 1, g - 1);
      join(t, g, t + 1, g);
    } else {
      join(t, g - 1, t, g);
      join(t + 1, g - 1, t + 1, g);
    }
  }
  Circles c;
  c.of_piece.assign(levels * n, -1);
  std::map<int, int> label;
  for (int p = 0; p < levels * n; ++p) {
    const int r = find(parent, p);
    auto it = label.find(r);
    if (it == label.end()) it = label.emplace(r, c.count++).first;
    c.of_piece[p] = it->second;
  }
  return c;
}

int n_minus(const Braid& b) {
  return static_cast<int>(std::count_if(b.letters.begin(), b.letters.end(), [](int l) { return l < 0; }));
}

// Invariant factors (absolute values, nonzero) of an integer matrix.
std::vector<mpz_class> invariant_factors(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const mpz_class q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const mpz_class q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Pivot must divide the rest of the block.
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

int DenseCube::index(std::uint64_t v, std::uint32_t xmask) const {
  const int k = std::popcount(v);
  const auto& g = gens[k];
  const auto it = std::find(g.begin(), g.end(), std::make_pair(v, xmask));
  if (it == g.end()) throw std::logic_error("no such generator");
  return static_cast<int>(it - g.begin());
}

DenseCube build(const Braid& b, Frobenius f) {
  const int c = static_cast<int>(b.letters.size());
  if (c > 12) throw std::invalid_argument("oracle cube limited to 12 crossings");
  const int nminus = n_minus(b);
  const int nplus = c - nminus;
  DenseCube cube;
  cube.min_degree = -nminus;
  cube.quantum.resize(c + 1);
  cube.gens.resize(c + 1);
  const std::uint64_t vertices = std::uint64_t{1} << c;
  std::vector<Circles> circ(vertices);
  for (std::uint64_t v = 0; v < vertices; ++v) {
    circ[v] = trace(b, v);
    cube.circles_per_vertex.push_back(circ[v].count);
    const int k = std::popcount(v);
    for (std::uint32_t x = 0; x < (1U << circ[v].count); ++x) {
      const int xs = std::popcount(x);
      cube.gens[k].emplace_back(v, x);
      cube.quantum[k].push_back((circ[v].count - xs) - xs + k + nplus - 2 * nminus);
    }
  }
  for (int t = 0; t < c; ++t)
    if (b.letters[t] < 0) cube.vertical_vertex |= std::uint64_t{1} << t;

  cube.d.resize(c + 1);
  for (int k = 0; k <= c; ++k)
    cube.d[k].assign(k < c ? cube.gens[k + 1].size() : 0, std::vector<long>(cube.gens[k].size(), 0));
  const int n = b.strands;
  const int levels = std::max(c, 1);
  const bool lee = f == Frobenius::lee;
  for (std::uint64_t v = 0; v < vertices; ++v)
    for (int t = 0; t < c; ++t) {
      if ((v >> t) & 1U) continue;
      const std::uint64_t w = v | (std::uint64_t{1} << t);
      const long sign = std::popcount(v & ((std::uint64_t{1} << t) - 1)) % 2 ? -1 : 1;
      const Circles& cv = circ[v];
      const Circles& cw = circ[w];
      // Relation between the circles of v and w through shared pieces.
      std::vector<std::set<int>> to_w(cv.count), to_v(cw.count);
      for (int p = 0; p < levels * n; ++p) {
        to_w[cv.of_piece[p]].insert(cw.of_piece[p]);
        to_v[cw.of_piece[p]].insert(cv.of_piece[p]);
      }
      const int k = std::popcount(v);
      for (std::uint32_t x = 0; x < (1U << cv.count); ++x) {
        const int col = cube.index(v, x);
        // Untouched circles carry their label.
        std::uint32_t base = 0;
        int merge_target = -1, split_source = -1;
        std::vector<int> merged;
        for (int i = 0; i < cv.count; ++i) {
          if (to_w[i].size() == 2) {
            split_source = i;
            continue;
          }
          const int j = *to_w[i].begin();
          if (to_v[j].size() == 2) {
            merge_target = j;
            merged.push_back(i);
            continue;
          }
          if ((x >> i) & 1U) base |= 1U << j;
        }
        auto add = [&](std::uint32_t y, long coeff) { cube.d[k][cube.index(w, y)][col] += sign * coeff; };
        if (merge_target >= 0) {
          const int e = static_cast<int>(((x >> merged[0]) & 1U) + ((x >> merged[1]) & 1U));
          if (e == 0) add(base, 1);
          else if (e == 1) add(base | (1U << merge_target), 1);
          else if (lee) add(base, 1);
        } else {
          const int c1 = *to_w[split_source].begin();
          const int c2 = *std::next(to_w[split_source].begin());
          if (((x >> split_source) & 1U) == 0) {
            add(base | (1U << c1), 1);
            add(base | (1U << c2), 1);
          } else {
            add(base | (1U << c1) | (1U << c2), 1);
            if (lee) add(base, 1);
          }
        }
      }
    }
  return cube;
}

Table khovanov(const Braid& b) {
  const DenseCube cube = build(b, Frobenius::khovanov);
  const int top = static_cast<int>(cube.quantum.size());
  std::set<int> qs;
  for (const auto& q : cube.quantum) qs.insert(q.begin(), q.end());
  Table out;
  for (int q : qs) {
    // Restrict every differential to quantum degree q.
    std::vector<std::vector<int>> idx(top);
    for (int k = 0; k < top; ++k)
      for (int i = 0; i < static_cast<int>(cube.quantum[k].size()); ++i)
        if (cube.quantum[k][i] == q) idx[k].push_back(i);
    std::vector<int> rank(top, 0);
    std::vector<std::vector<mpz_class>> torsion_from(top);
    for (int k = 0; k + 1 < top; ++k) {
      std::vector<std::vector<mpz_class>> m(idx[k + 1].size(), std::vector<mpz_class>(idx[k].size()));
      for (std::size_t r = 0; r < idx[k + 1].size(); ++r)
        for (std::size_t s = 0; s < idx[k].size(); ++s) m[r][s] = cube.d[k][idx[k + 1][r]][idx[k][s]];
      const auto f = invariant_factors(std::move(m));
      rank[k] = static_cast<int>(f.size());
      for (const auto& x : f)
        if (x > 1) torsion_from[k + 1].push_back(x);
    }
    for (int k = 0; k < top; ++k) {
      Group g;
      g.rank = static_cast<int>(idx[k].size()) - rank[k] - (k > 0 ? rank[k - 1] : 0);
      for (const auto& x : torsion_from[k]) g.torsion.push_back(x.get_si());
      std::sort(g.torsion.begin(), g.torsion.end());
      if (g.rank != 0 || !g.torsion.empty()) out[{q, k + cube.min_degree}] = g;
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<long>>& m, std::size_t cols) {
  Eigen::MatrixXd e(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) e(i, j) = static_cast<double>(m[i][j]);
  return e;
}

long rank_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return lu.rank();
}

}  // namespace

std::map<int, int> lee_ranks(const Braid& b) {
  const DenseCube cube = build(b, Frobenius::lee);
  const int top = static_cast<int>(cube.quantum.size());
  std::vector<long> rank(top, 0);
  for (int k = 0; k + 1 < top; ++k) rank[k] = rank_of(to_eigen(cube.d[k], cube.gens[k].size()));
  std::map<int, int> out;
  for (int k = 0; k < top; ++k) {
    const long r = static_cast<long>(cube.gens[k].size()) - rank[k] - (k > 0 ? rank[k - 1] : 0);
    if (r) out[k + cube.min_degree] = static_cast<int>(r);
  }
  return out;
}

std::map<int, long> jones_unnormalized(const Braid& b) {
  // Kauffman bracket in the variable A, then V(t) with t = A^-4 and q = A^-2.
  const int c = static_cast<int>(b.letters.size());
  std::map<int, long> bracket;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << c); ++v) {
    int a_smoothings = 0;
    for (int t = 0; t < c; ++t) a_smoothings += ((v >> t) & 1U) == 0;
    const int loops = trace(b, v).count;
    // A^(a - b) * (-A^2 - A^-2)^(loops - 1)
    std::map<int, long> term{{a_smoothings - (c - a_smoothings), 1}};
    for (int l = 1; l < loops; ++l) {
      std::map<int, long> next;
      for (auto [e, k] : term) {
        next[e + 2] -= k;
        next[e - 2] -= k;
      }
      term = std::move(next);
    }
    for (auto [e, k] : term) bracket[e] += k;
  }
  int writhe = 0;
  for (int l : b.letters) writhe += l > 0 ? 1 : -1;
  // (-A^3)^-w
  const long sign = writhe % 2 ? -1 : 1;
  std::map<int, long> q_poly;
  for (auto [e, k] : bracket) {
    if (k == 0) continue;
    const int ae = e - 3 * writhe;
    if (ae % 2 != 0) throw std::logic_error("odd power of A");
    // t^(1/2) = A^-2 is sent to -q.
    const int qe = -ae / 2;
    const long c = (qe % 2 ? -1 : 1) * sign * k;
    q_poly[qe + 1] += c;
    q_poly[qe - 1] += c;
  }
  // The bracket is normalized so that the unknot is 1; (q + 1/q) restores
  // the unnormalized form and Kh(unknot) = q + 1/q.
  std::map<int, long> out;
  for (auto [e, k] : q_poly)
    if (k) out[e] = k;
  return out;
}

std::map<int, long> euler_characteristic(const Table& t) {
  std::map<int, long> out;
  for (const auto& [key, g] : t) out[key.first] += (key.second % 2 ? -1 : 1) * g.rank;
  for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
  return out;
}

int filtration_grading(const DenseCube& c, int degree, const std::vector<long>& z) {
  const int k = degree - c.min_degree;
  const auto& q = c.quantum[k];
  Eigen::MatrixXd d = k > 0 ? to_eigen(c.d[k - 1], c.gens[k - 1].size()) : Eigen::MatrixXd(q.size(), 0);
  std::set<int> values(q.begin(), q.end());
  for (int m : values) {
    // Does z lie in F_{m+1} + im d, i.e. vanish on coordinates q <= m mod im d?
    std::vector<int> rows;
    for (int i = 0; i < static_cast<int>(q.size()); ++i)
      if (q[i] <= m) rows.push_back(i);
    Eigen::MatrixXd pd(rows.size(), d.cols());
    Eigen::MatrixXd aug(rows.size(), d.cols() + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (int col = 0; col < d.cols(); ++col) pd(r, col) = aug(r, col) = d(rows[r], col);
      aug(r, d.cols()) = static_cast<double>(z[rows[r]]);
    }
    if (rank_of(aug) != rank_of(pd)) return m;
  }
  throw std::logic_error("class is zero");
}

SOracle rasmussen(const Braid& b) {
  const DenseCube cube = build(b, Frobenius::lee);
  const int n = b.strands;
  const std::uint64_t v = cube.vertical_vertex;
  // In the all-vertical resolution circle k is the closed strand at position k;
  // find which circle id each position got.
  const Circles cv = trace(b, v);
  std::vector<int> circle_of_position(n);
  for (int k = 0; k < n; ++k) circle_of_position[k] = cv.of_piece[k];
  const int deg = std::popcount(v) + cube.min_degree;
  const int k0 = std::popcount(v);
  auto product = [&](int flip) {
    // circle at position k: X + (-1)^(k + flip) * 1
    std::vector<long> z(cube.gens[k0].size(), 0);
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
      long coeff = 1;
      for (int k = 0; k < n; ++k) {
        const bool is_x = (x >> circle_of_position[k]) & 1U;
        if (!is_x && (k + flip) % 2) coeff = -coeff;
      }
      z[cube.index(v, x)] = coeff;
    }
    return z;
  };
  const auto so = product(0);
  const auto sobar = product(1);
  std::vector<long> sum(so.size()), diff(so.size());
  for (std::size_t i = 0; i < so.size(); ++i) {
    sum[i] = so[i] + sobar[i];
    diff[i] = so[i] - sobar[i];
  }
  SOracle r;
  r.gr_o = filtration_grading(cube, deg, so);
  r.gr_sum = filtration_grading(cube, deg, sum);
  r.gr_diff = filtration_grading(cube, deg, diff);
  r.s = (r.gr_sum + r.gr_diff) / 2;
  return r;
}

}  // namespace oracle
