#include "kholag/snf.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace kholag {

namespace {

struct Overflow {};

// Checked arithmetic for the 64-bit pass; GMP integers never overflow.
inline std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t p, r;
  if (__builtin_mul_overflow(f, b, &p) || __builtin_sub_overflow(a, p, &r)) throw Overflow{};
  return r;
}
inline mpz_class sub_mul(const mpz_class& a, const mpz_class& f, const mpz_class& b) { return a - f * b; }

inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }
inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_zero(const mpz_class& a) { return a == 0; }
inline mpz_class to_mpz(std::int64_t a) { return mpz_class(static_cast<long>(a)); }
inline mpz_class to_mpz(const mpz_class& a) { return a; }

struct Outcome {
  SmithForm form;
  bool solvable = true;
};

// Diagonalizes a dense matrix in place with unimodular row/column operations.
// Row operations are mirrored on `rhs`. Returns the diagonal entries.
std::vector<mpz_class> diagonalize(std::vector<std::vector<mpz_class>>& a, std::vector<std::vector<mpz_class>>& rhs) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  std::size_t top = 0;
  auto row_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j = top; j < n; ++j) a[dst][j] -= q * a[src][j];
    for (auto& z : rhs) z[dst] -= q * z[src];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t i = top; i < m; ++i) a[i][dst] -= q * a[i][src];
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& z : rhs) std::swap(z[i], z[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
  };

  while (top < m && top < n) {
    // Smallest nonzero entry in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = top; i < m; ++i)
      for (std::size_t j = top; j < n; ++j)
        if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {{i, j}};
    if (!best) break;
    swap_rows(top, best->first);
    swap_cols(top, best->second);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = top + 1; i < m; ++i) {
        if (a[i][top] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][top].get_mpz_t(), a[top][top].get_mpz_t());
        row_op(i, top, q);
        if (a[i][top] != 0) {
          swap_rows(top, i);
          clean = false;
        }
      }
      for (std::size_t j = top + 1; j < n; ++j) {
        if (a[top][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[top][j].get_mpz_t(), a[top][top].get_mpz_t());
        col_op(j, top, q);
        if (a[top][j] != 0) {
          swap_cols(top, j);
          clean = false;
        }
      }
    }
    diag.push_back(a[top][top]);
    ++top;
  }
  return diag;
}

template <class Int>
class Eliminator {
 public:
  Eliminator(const SparseMatrix& m, const std::vector<std::vector<std::int64_t>>& rhs)
      : rows_(m.rows()), cols_(m.cols()), columns_(cols_), row_count_(rows_, 0), row_cols_(rows_),
        col_alive_(cols_, true), row_alive_(rows_, true) {
    for (int c = 0; c < cols_; ++c) {
      for (const auto& e : m.column(c)) {
        columns_[c].push_back({e.row, Int(e.value)});
        ++row_count_[e.row];
        row_cols_[e.row].push_back(c);
      }
    }
    for (const auto& z : rhs) {
      std::vector<Int> v(rows_);
      for (int r = 0; r < rows_; ++r) v[r] = Int(z[r]);
      rhs_.push_back(std::move(v));
    }
  }

  Outcome run() {
    std::set<std::pair<std::size_t, int>> queue;
    std::vector<std::size_t> queued_size(cols_);
    for (int c = 0; c < cols_; ++c) {
      queued_size[c] = columns_[c].size();
      queue.insert({queued_size[c], c});
    }
    auto touch = [&](int c) {
      queue.erase({queued_size[c], c});
      queued_size[c] = columns_[c].size();
      queue.insert({queued_size[c], c});
    };

    int rank = 0;
    while (!queue.empty()) {
      auto [size, c] = *queue.begin();
      queue.erase(queue.begin());
      if (!col_alive_[c]) continue;
      if (size == 0) {
        col_alive_[c] = false;
        continue;
      }
      // Unit entry in the sparsest row.
      int pivot_row = -1;
      for (const auto& [r, v] : columns_[c])
        if (is_unit(v) && (pivot_row < 0 || row_count_[r] < row_count_[pivot_row])) pivot_row = r;
      if (pivot_row < 0) continue;  // left for the dense phase unless touched again
      eliminate(pivot_row, c, touch);
      ++rank;
    }

    // Dense remainder.
    std::vector<int> dense_cols;
    for (int c = 0; c < cols_; ++c)
      if (col_alive_[c] && !columns_[c].empty()) dense_cols.push_back(c);
    std::vector<int> dense_rows;
    std::vector<int> dense_row_of(rows_, -1);
    bool solvable = true;
    for (int r = 0; r < rows_; ++r) {
      if (!row_alive_[r]) continue;
      if (row_count_[r] > 0) {
        dense_row_of[r] = static_cast<int>(dense_rows.size());
        dense_rows.push_back(r);
      } else {
        for (const auto& z : rhs_)
          if (!is_zero(z[r])) solvable = false;
      }
    }
    std::vector<std::vector<mpz_class>> a(dense_rows.size(), std::vector<mpz_class>(dense_cols.size()));
    for (std::size_t j = 0; j < dense_cols.size(); ++j)
      for (const auto& [r, v] : columns_[dense_cols[j]]) a[dense_row_of[r]][j] = to_mpz(v);
    std::vector<std::vector<mpz_class>> z(rhs_.size(), std::vector<mpz_class>(dense_rows.size()));
    for (std::size_t k = 0; k < rhs_.size(); ++k)
      for (std::size_t i = 0; i < dense_rows.size(); ++i) z[k][i] = to_mpz(rhs_[k][dense_rows[i]]);

    auto diag = diagonalize(a, z);
    for (const auto& vec : z) {
      for (std::size_t i = 0; i < vec.size(); ++i) {
        if (i < diag.size()) {
          if (vec[i] % diag[i] != 0) solvable = false;
        } else if (vec[i] != 0) {
          solvable = false;
        }
      }
    }

    // Diagonal -> invariant factors.
    for (auto& d : diag) d = abs(d);
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        mpz_class g = gcd(diag[i], diag[j]);
        mpz_class l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
    Outcome out;
    out.form.rank = rank + static_cast<int>(diag.size());
    for (const auto& d : diag)
      if (d > 1) out.form.torsion.push_back(d);
    std::sort(out.form.torsion.begin(), out.form.torsion.end());
    out.solvable = solvable;
    return out;
  }

 private:
  using Column = std::vector<std::pair<int, Int>>;

  template <class Touch>
  void eliminate(int r, int c, Touch&& touch) {
    const Column pivot_col = columns_[c];
    Int u{};
    for (const auto& [row, v] : pivot_col)
      if (row == r) u = v;

    std::vector<int> others = row_cols_[r];
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (int c2 : others) {
      if (c2 == c || !col_alive_[c2]) continue;
      auto& col = columns_[c2];
      auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int row) { return e.first < row; });
      if (it == col.end() || it->first != r) continue;
      const Int f = sub_mul(Int(0), Int(-1), it->second * u);  // a * u (u = +-1)
      axpy(c2, f, pivot_col);
      touch(c2);
    }
    for (auto& z : rhs_) {
      const Int zr = z[r];
      if (is_zero(zr)) continue;
      for (const auto& [row, v] : pivot_col)
        if (row != r) z[row] = sub_mul(z[row], v * u, zr);
    }
    for (const auto& [row, v] : pivot_col) --row_count_[row];
    columns_[c].clear();
    col_alive_[c] = false;
    row_alive_[r] = false;
    row_cols_[r].clear();
  }

  // column c2 -= f * src
  void axpy(int c2, const Int& f, const Column& src) {
    Column& dst = columns_[c2];
    Column out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        const int row = src[j].first;
        Int v = sub_mul(Int(0), f, src[j].second);
        ++j;
        if (is_zero(v)) continue;
        ++row_count_[row];
        row_cols_[row].push_back(c2);
        out.push_back({row, std::move(v)});
      } else {
        const int row = dst[i].first;
        Int v = sub_mul(dst[i].second, f, src[j].second);
        ++i;
        ++j;
        if (is_zero(v)) {
          --row_count_[row];
          continue;
        }
        out.push_back({row, std::move(v)});
      }
    }
    dst = std::move(out);
  }

  int rows_, cols_;
  std::vector<Column> columns_;
  std::vector<int> row_count_;
  std::vector<std::vector<int>> row_cols_;
  std::vector<bool> col_alive_, row_alive_;
  std::vector<std::vector<Int>> rhs_;
};

Outcome reduce(const SparseMatrix& m, const std::vector<std::vector<std::int64_t>>& rhs) {
  for (const auto& z : rhs)
    if (static_cast<int>(z.size()) != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  try {
    return Eliminator<std::int64_t>(m, rhs).run();
  } catch (const Overflow&) {
    return Eliminator<mpz_class>(m, rhs).run();
  }
}

}  // namespace

SmithForm smith_form(const SparseMatrix& m) { return reduce(m, {}).form; }

int rank(const SparseMatrix& m) { return reduce(m, {}).form.rank; }

bool in_integer_image(const SparseMatrix& d, const std::vector<std::int64_t>& z) { return reduce(d, {z}).solvable; }

bool in_rational_image(const SparseMatrix& d, const std::vector<std::int64_t>& z) {
  return rank(d.with_columns({z})) == rank(d);
}

}  // namespace kholag
