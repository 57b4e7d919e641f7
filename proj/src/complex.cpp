#include "kholag/complex.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include <nlohmann/json.hpp>

#include "kholag/error.hpp"
#include "kholag/snf.hpp"

namespace kholag {

FilteredComplex::FilteredComplex(int min_degree, std::vector<std::vector<int>> quantum,
                                 std::vector<SparseMatrix> differentials)
    : min_degree_(min_degree), quantum_(std::move(quantum)), differentials_(std::move(differentials)) {
  const int n = static_cast<int>(quantum_.size());
  if (static_cast<int>(differentials_.size()) != n)
    throw IntegrityError("one differential per homological degree required");
  for (int k = 0; k < n; ++k) {
    const int src = static_cast<int>(quantum_[k].size());
    const int dst = k + 1 < n ? static_cast<int>(quantum_[k + 1].size()) : 0;
    const auto& d = differentials_[k];
    if (d.cols() != src || d.rows() != dst)
      throw IntegrityError("differential in degree " + std::to_string(min_degree_ + k) + " has the wrong shape");
    for (int c = 0; c < src; ++c)
      for (const auto& e : d.column(c))
        if (quantum_[k + 1][e.row] < quantum_[k][c])
          throw IntegrityError("differential lowers the quantum filtration in degree " +
                               std::to_string(min_degree_ + k));
  }
  for (int k = 0; k + 1 < n; ++k)
    if (!(differentials_[k + 1] * differentials_[k]).is_zero())
      throw IntegrityError("d^2 != 0 starting in degree " + std::to_string(min_degree_ + k));
}

int FilteredComplex::size(int j) const { return has_degree(j) ? static_cast<int>(quantum_[j - min_degree_].size()) : 0; }

int FilteredComplex::total_size() const {
  int n = 0;
  for (const auto& q : quantum_) n += static_cast<int>(q.size());
  return n;
}

const std::vector<int>& FilteredComplex::quantum(int j) const {
  static const std::vector<int> empty;
  return has_degree(j) ? quantum_[j - min_degree_] : empty;
}

SparseMatrix FilteredComplex::differential(int j) const {
  if (has_degree(j)) return differentials_[j - min_degree_];
  return SparseMatrix(size(j + 1), size(j));
}

bool FilteredComplex::is_homogeneous() const {
  for (int j = min_degree_; j <= max_degree(); ++j) {
    const auto& d = differentials_[j - min_degree_];
    for (int c = 0; c < d.cols(); ++c)
      for (const auto& e : d.column(c))
        if (quantum(j + 1)[e.row] != quantum(j)[c]) return false;
  }
  return true;
}

bool Chain::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t v) { return v == 0; });
}

Chain operator+(const Chain& a, const Chain& b) {
  if (a.degree != b.degree || a.coeffs.size() != b.coeffs.size()) throw DomainError("chains live in different groups");
  Chain out = a;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

Chain operator-(const Chain& a) {
  Chain out = a;
  for (auto& v : out.coeffs) v = -v;
  return out;
}

Chain operator-(const Chain& a, const Chain& b) { return a + (-b); }

namespace {

void check_shape(const FilteredComplex& c, const Chain& z) {
  if (static_cast<int>(z.coeffs.size()) != c.size(z.degree))
    throw DomainError("chain length does not match the generator count in degree " + std::to_string(z.degree));
}

}  // namespace

Chain apply_differential(const FilteredComplex& c, const Chain& z) {
  check_shape(c, z);
  return Chain{z.degree + 1, c.differential(z.degree).apply(z.coeffs)};
}

bool is_cycle(const FilteredComplex& c, const Chain& z) { return apply_differential(c, z).is_zero(); }

int min_quantum_degree(const FilteredComplex& c, const Chain& z) {
  check_shape(c, z);
  int m = INT_MAX;
  const auto& q = c.quantum(z.degree);
  for (std::size_t i = 0; i < z.coeffs.size(); ++i)
    if (z.coeffs[i] != 0) m = std::min(m, q[i]);
  return m;
}

const HomologyGroup& BigradedHomology::at(int i, int j) const {
  static const HomologyGroup zero;
  auto it = groups.find({i, j});
  return it == groups.end() ? zero : it->second;
}

int BigradedHomology::total_rank() const {
  int n = 0;
  for (const auto& [k, g] : groups) n += g.free_rank;
  return n;
}

bool BigradedHomology::is_zero() const {
  return std::all_of(groups.begin(), groups.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::map<std::pair<int, int>, HomologyGroup> BigradedHomology::by_h_q() const {
  std::map<std::pair<int, int>, HomologyGroup> out;
  for (const auto& [k, g] : groups) out[{k.second, k.first}] = g;
  return out;
}

namespace {

std::vector<std::int64_t> to_int64(const std::vector<mpz_class>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error("invariant factor does not fit in 64 bits");
    out.push_back(x.get_si());
  }
  return out;
}

}  // namespace

BigradedHomology homology(const FilteredComplex& c, Grading grading) {
  BigradedHomology h;
  h.bigraded = grading == Grading::bigraded;
  if (c.total_size() == 0) return h;
  if (h.bigraded && !c.is_homogeneous()) throw DomainError("bigraded homology needs a degree-preserving differential");

  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    std::set<int> qs;
    if (h.bigraded) qs.insert(c.quantum(j).begin(), c.quantum(j).end());
    else qs.insert(0);
    for (int q : qs) {
      auto pick = [&](int deg) {
        std::vector<int> ids;
        const auto& qd = c.quantum(deg);
        for (int k = 0; k < static_cast<int>(qd.size()); ++k)
          if (!h.bigraded || qd[k] == q) ids.push_back(k);
        return ids;
      };
      const auto here = pick(j), above = pick(j + 1), below = pick(j - 1);
      const auto out = smith_form(c.differential(j).submatrix(above, here));
      const auto in = smith_form(c.differential(j - 1).submatrix(here, below));
      HomologyGroup g;
      g.free_rank = static_cast<int>(here.size()) - out.rank - in.rank;
      g.torsion = to_int64(in.torsion);
      if (!g.is_zero()) h.groups[{q, j}] = g;
    }
  }
  return h;
}

bool class_is_zero(const FilteredComplex& c, const Chain& z) {
  if (!is_cycle(c, z)) throw DomainError("class_is_zero: chain is not a cycle");
  if (z.is_zero()) return true;
  return in_integer_image(c.differential(z.degree - 1), z.coeffs);
}

bool class_is_zero_rational(const FilteredComplex& c, const Chain& z) {
  if (!is_cycle(c, z)) throw DomainError("class_is_zero: chain is not a cycle");
  if (z.is_zero()) return true;
  return in_rational_image(c.differential(z.degree - 1), z.coeffs);
}

Chain Subquotient::project(const Chain& z) const {
  Chain out{z.degree, {}};
  if (!complex.has_degree(z.degree)) return out;
  const auto& kept = source_index[z.degree - complex.min_degree()];
  for (int idx : kept) out.coeffs.push_back(z.coeffs.at(idx));
  return out;
}

Subquotient subquotient_with_map(const FilteredComplex& c, int low, int high) {
  if (low >= high) throw DomainError("subquotient needs low < high");
  Subquotient s;
  s.low = low;
  s.high = high;
  std::vector<std::vector<int>> quantum;
  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    std::vector<int> kept, degs;
    const auto& q = c.quantum(j);
    for (int k = 0; k < static_cast<int>(q.size()); ++k)
      if (q[k] >= low && q[k] < high) {
        kept.push_back(k);
        degs.push_back(q[k]);
      }
    s.source_index.push_back(std::move(kept));
    quantum.push_back(std::move(degs));
  }
  std::vector<SparseMatrix> diffs;
  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    const int k = j - c.min_degree();
    static const std::vector<int> none;
    const auto& rows = k + 1 < static_cast<int>(s.source_index.size()) ? s.source_index[k + 1] : none;
    diffs.push_back(c.differential(j).submatrix(rows, s.source_index[k]));
  }
  s.complex = FilteredComplex(c.min_degree(), std::move(quantum), std::move(diffs));
  return s;
}

FilteredComplex subquotient(const FilteredComplex& c, int low, int high) {
  return subquotient_with_map(c, low, high).complex;
}

int filtration_grading(const FilteredComplex& c, const Chain& z) {
  if (!is_cycle(c, z)) throw DomainError("filtration_grading: chain is not a cycle");
  const auto& q = c.quantum(z.degree);
  const SparseMatrix d = c.differential(z.degree - 1);
  std::set<int, std::greater<>> levels(q.begin(), q.end());

  // z ~ element of F_m  <=>  the part of z below m lies in the image of the
  // part of d below m.
  auto reachable = [&](int m) {
    std::vector<int> rows;
    std::vector<std::int64_t> part;
    for (int k = 0; k < static_cast<int>(q.size()); ++k)
      if (q[k] < m) {
        rows.push_back(k);
        part.push_back(z.coeffs[k]);
      }
    if (std::all_of(part.begin(), part.end(), [](std::int64_t v) { return v == 0; })) return true;
    std::vector<int> cols(d.cols());
    for (int k = 0; k < d.cols(); ++k) cols[k] = k;
    return in_rational_image(d.submatrix(rows, cols), part);
  };

  if (z.is_zero() || reachable(INT_MAX)) throw ZeroClassError("filtration grading of a zero class is undefined");
  for (int m : levels)
    if (reachable(m)) return m;
  throw IntegrityError("filtration_grading: no admissible level");  // unreachable: the minimum level always works
}

std::string dump_json(const FilteredComplex& c) {
  nlohmann::json j;
  j["min_degree"] = c.min_degree();
  j["generators"] = nlohmann::json::array();
  j["matrices"] = nlohmann::json::array();
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    j["generators"].push_back(c.quantum(d));
    nlohmann::json m = nlohmann::json::array();
    const auto diff = c.differential(d);
    for (int col = 0; col < diff.cols(); ++col)
      for (const auto& e : diff.column(col)) m.push_back({e.row, col, e.value});
    j["matrices"].push_back(std::move(m));
  }
  return j.dump();
}

FilteredComplex load_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("complex JSON: ") + e.what());
  }
  const int min_degree = j.at("min_degree").get<int>();
  auto quantum = j.at("generators").get<std::vector<std::vector<int>>>();
  const auto& mats = j.at("matrices");
  if (mats.size() != quantum.size()) throw ParseError("complex JSON: one matrix per degree required");
  std::vector<SparseMatrix> diffs;
  for (std::size_t k = 0; k < quantum.size(); ++k) {
    const int rows = k + 1 < quantum.size() ? static_cast<int>(quantum[k + 1].size()) : 0;
    SparseMatrix m(rows, static_cast<int>(quantum[k].size()));
    for (const auto& e : mats[k]) m.add(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::int64_t>());
    diffs.push_back(std::move(m));
  }
  return FilteredComplex(min_degree, std::move(quantum), std::move(diffs));
}

}  // namespace kholag
