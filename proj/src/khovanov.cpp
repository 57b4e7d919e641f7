#include "kholag/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kholag/detail/dsu.hpp"
#include "kholag/error.hpp"

namespace kholag {

namespace {

int popcount(Vertex v) { return std::popcount(v); }

}  // namespace

CubeComplex::CubeComplex(LinkDiagram diagram, Theory theory) : diagram_(std::move(diagram)), theory_(theory) {
  const int c = diagram_.crossing_count();
  if (c > kMaxCubeCrossings) throw DomainError("diagram has too many crossings for the cube construction");
  n_plus_ = diagram_.n_plus();
  n_minus_ = diagram_.n_minus();
  const Vertex vertices = Vertex{1} << c;
  circle_count_.resize(vertices);
  circles_.resize(vertices);
  for (Vertex v = 0; v < vertices; ++v) {
    detail::DisjointSets dsu(diagram_.edge_count());
    for (int k = 0; k < c; ++k) {
      const auto& e = diagram_.crossings()[k].edges;
      if ((v >> k) & 1U) {
        dsu.unite(e[0], e[3]);
        dsu.unite(e[1], e[2]);
      } else {
        dsu.unite(e[0], e[1]);
        dsu.unite(e[2], e[3]);
      }
    }
    circle_count_[v] = dsu.label(circles_[v]);
    if (circle_count_[v] > 30) throw DomainError("too many circles in a resolution");
  }

  // Offsets within each homological degree.
  std::vector<std::vector<int>> quantum(c + 1);
  offset_.resize(vertices);
  for (Vertex v = 0; v < vertices; ++v) {
    auto& q = quantum[popcount(v)];
    offset_[v] = static_cast<int>(q.size());
    const Labels count = Labels{1} << circle_count_[v];
    for (Labels x = 0; x < count; ++x) q.push_back(quantum_degree(v, x));
  }

  std::vector<SparseMatrix> diffs;
  for (int h = 0; h <= c; ++h) {
    const int rows = h < c ? static_cast<int>(quantum[h + 1].size()) : 0;
    diffs.emplace_back(rows, static_cast<int>(quantum[h].size()));
  }

  const bool lee = theory_ == Theory::lee;
  for (Vertex v = 0; v < vertices; ++v) {
    const int h = popcount(v);
    const int nc = circle_count_[v];
    // A representative edge for each circle of v.
    std::vector<int> rep(nc, -1);
    for (int e = 0; e < diagram_.edge_count(); ++e)
      if (rep[circles_[v][e]] < 0) rep[circles_[v][e]] = e;

    for (int k = 0; k < c; ++k) {
      const Vertex bit = Vertex{1} << k;
      if (v & bit) continue;
      const Vertex w = v | bit;
      const std::int64_t sign = popcount(v & (bit - 1)) % 2 ? -1 : 1;
      const auto& e = diagram_.crossings()[k].edges;
      const auto& cv = circles_[v];
      const auto& cw = circles_[w];
      const int a = cv[e[0]], b = cv[e[2]];
      auto& d = diffs[h];

      // Labels on the circles untouched by this edge carry over.
      auto carry = [&](Labels x) {
        Labels y = 0;
        for (int i = 0; i < nc; ++i)
          if (i != a && i != b && ((x >> i) & 1U)) y |= Labels{1} << cw[rep[i]];
        return y;
      };
      const Labels count = Labels{1} << nc;
      if (a != b) {
        const Labels m = Labels{1} << cw[e[0]];
        for (Labels x = 0; x < count; ++x) {
          const bool pa = (x >> a) & 1U, pb = (x >> b) & 1U;
          const Labels base = carry(x);
          const int col = offset_[v] + static_cast<int>(x);
          if (pa && pb) d.add(offset_[w] + static_cast<int>(base | m), col, sign);
          else if (pa != pb) d.add(offset_[w] + static_cast<int>(base), col, sign);
          else if (lee) d.add(offset_[w] + static_cast<int>(base | m), col, sign);
        }
      } else {
        const Labels p = Labels{1} << cw[e[0]];
        const Labels q = Labels{1} << cw[e[1]];
        for (Labels x = 0; x < count; ++x) {
          const Labels base = carry(x);
          const int col = offset_[v] + static_cast<int>(x);
          if ((x >> a) & 1U) {
            d.add(offset_[w] + static_cast<int>(base | p), col, sign);
            d.add(offset_[w] + static_cast<int>(base | q), col, sign);
          } else {
            d.add(offset_[w] + static_cast<int>(base), col, sign);
            if (lee) d.add(offset_[w] + static_cast<int>(base | p | q), col, sign);
          }
        }
      }
    }
  }
  complex_ = FilteredComplex(-n_minus_, std::move(quantum), std::move(diffs));
  if (theory_ == Theory::khovanov && !complex_.is_homogeneous())
    throw IntegrityError("Khovanov differential does not preserve quantum degree");
}

int CubeComplex::homological_degree(Vertex v) const { return popcount(v) - n_minus_; }

int CubeComplex::quantum_degree(Vertex v, Labels labels) const {
  const int plus = std::popcount(labels);
  const int minus = circle_count_[v] - plus;
  return plus - minus + popcount(v) + n_plus_ - 2 * n_minus_;
}

Chain CubeComplex::zero_chain(int degree) const {
  return Chain{degree, std::vector<std::int64_t>(complex_.size(degree), 0)};
}

Chain CubeComplex::generator(Vertex v, Labels labels) const {
  Chain z = zero_chain(homological_degree(v));
  z.coeffs.at(generator_index(v, labels)) = 1;
  return z;
}

CubeComplex build_khovanov_complex(const LinkDiagram& d) { return CubeComplex(d, Theory::khovanov); }

BigradedHomology khovanov_homology(const LinkDiagram& d) {
  return homology(build_khovanov_complex(d).complex(), Grading::bigraded);
}

int ng_line(const BigradedHomology& h) {
  int best = INT_MAX;
  for (const auto& [key, g] : h.groups)
    if (!g.is_zero()) best = std::min(best, key.first - key.second);
  if (best == INT_MAX) throw DomainError("ng_line of zero homology");
  return best;
}

bool check_mirror_duality(const BigradedHomology& h_k, const BigradedHomology& h_mirror) {
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, g] : h_k.groups) keys.insert(k);
  for (const auto& [k, g] : h_mirror.groups) keys.insert({-k.first, -k.second});
  for (const auto& [i, j] : keys)
    if (h_k.free_rank(i, j) != h_mirror.free_rank(-i, -j)) return false;
  return true;
}

TopVerdict top_obstruction(const BigradedHomology& h, int tb_candidate) {
  return tb_candidate == ng_line(h) ? TopVerdict::consistent : TopVerdict::obstructed;
}

const char* to_string(TopVerdict v) { return v == TopVerdict::consistent ? "consistent" : "obstructed"; }

std::vector<std::pair<int, std::int64_t>> graded_euler_characteristic(const BigradedHomology& h) {
  std::map<int, std::int64_t> poly;
  for (const auto& [key, g] : h.groups) poly[key.first] += (key.second % 2 ? -1 : 1) * g.free_rank;
  std::vector<std::pair<int, std::int64_t>> out;
  for (auto [i, c] : poly)
    if (c != 0) out.emplace_back(i, c);
  return out;
}

std::string homology_to_json(const BigradedHomology& h) {
  nlohmann::json j;
  j["convention"] = h.bigraded ? "i=quantum,j=homological" : "j=homological";
  j["groups"] = nlohmann::json::array();
  for (const auto& [key, g] : h.groups) {
    nlohmann::json e;
    if (h.bigraded) e["i"] = key.first;
    e["j"] = key.second;
    e["rank"] = g.free_rank;
    e["torsion"] = g.torsion;
    j["groups"].push_back(std::move(e));
  }
  if (h.bigraded && !h.is_zero()) j["ng_line"] = ng_line(h);
  return j.dump();
}

std::string homology_grid(const BigradedHomology& h) {
  if (h.groups.empty()) return "(zero)\n";
  int imin = INT_MAX, imax = INT_MIN, jmin = INT_MAX, jmax = INT_MIN;
  for (const auto& [k, g] : h.groups) {
    imin = std::min(imin, k.first);
    imax = std::max(imax, k.first);
    jmin = std::min(jmin, k.second);
    jmax = std::max(jmax, k.second);
  }
  const int line = h.bigraded ? ng_line(h) : INT_MIN;
  auto cell = [&](int i, int j) {
    const auto& g = h.at(i, j);
    if (g.is_zero()) return std::string(".");
    std::string s;
    if (g.free_rank) s = std::to_string(g.free_rank);
    for (auto t : g.torsion) s += (s.empty() ? "" : "+") + std::string("Z/") + std::to_string(t);
    if (i - j == line) s += "*";
    return s;
  };
  std::size_t width = 4;
  for (int i = imin; i <= imax; ++i)
    for (int j = jmin; j <= jmax; ++j) width = std::max(width, cell(i, j).size() + 1);

  std::ostringstream os;
  os << std::setw(6) << "i\\j";
  for (int j = jmin; j <= jmax; ++j) os << std::setw(static_cast<int>(width)) << j;
  os << "   diagonals i-j\n";
  for (int i = imax; i >= imin; i -= 1) {
    os << std::setw(6) << i;
    for (int j = jmin; j <= jmax; ++j) os << std::setw(static_cast<int>(width)) << cell(i, j);
    os << "   " << i - jmax << ".." << i - jmin << '\n';
  }
  if (h.bigraded) os << "Ng's line: i - j = " << line << " (cells marked *)\n";
  return os.str();
}

}  // namespace kholag
