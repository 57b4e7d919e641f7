#include "kholag/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kholag {

void SparseMatrix::add(int row, int col, std::int64_t value) {
  if (value == 0) return;
  auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  if (it != column.end() && it->row == row) {
    it->value += value;
    if (it->value == 0) column.erase(it);
  } else {
    column.insert(it, Entry{row, value});
  }
}

std::int64_t SparseMatrix::at(int row, int col) const {
  const auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  return it != column.end() && it->row == row ? it->value : 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
  if (cols() != other.rows()) throw std::invalid_argument("matrix shapes do not compose");
  SparseMatrix out(rows_, other.cols());
  std::map<int, std::int64_t> acc;
  for (int c = 0; c < other.cols(); ++c) {
    acc.clear();
    for (const auto& e : other.columns_[c])
      for (const auto& f : columns_[e.row]) acc[f.row] += f.value * e.value;
    for (auto [r, v] : acc)
      if (v != 0) out.columns_[c].push_back({r, v});
  }
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& other) const {
  if (rows_ != other.rows_ || cols() != other.cols()) throw std::invalid_argument("shape mismatch");
  SparseMatrix out = *this;
  for (int c = 0; c < other.cols(); ++c)
    for (const auto& e : other.columns_[c]) out.add(e.row, c, -e.value);
  return out;
}

std::vector<std::int64_t> SparseMatrix::apply(std::span<const std::int64_t> x) const {
  if (static_cast<int>(x.size()) != cols()) throw std::invalid_argument("vector length mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (int c = 0; c < cols(); ++c) {
    if (x[c] == 0) continue;
    for (const auto& e : columns_[c]) y[e.row] += e.value * x[c];
  }
  return y;
}

SparseMatrix SparseMatrix::submatrix(std::span<const int> row_ids, std::span<const int> col_ids) const {
  std::vector<int> new_row(rows_, -1);
  for (std::size_t i = 0; i < row_ids.size(); ++i) new_row[row_ids[i]] = static_cast<int>(i);
  SparseMatrix out(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
  for (std::size_t j = 0; j < col_ids.size(); ++j) {
    for (const auto& e : columns_[col_ids[j]])
      if (new_row[e.row] >= 0) out.columns_[j].push_back({new_row[e.row], e.value});
    std::sort(out.columns_[j].begin(), out.columns_[j].end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }
  return out;
}

SparseMatrix SparseMatrix::with_columns(const std::vector<std::vector<std::int64_t>>& extra) const {
  SparseMatrix out = *this;
  for (const auto& v : extra) {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("column length mismatch");
    Column col;
    for (int r = 0; r < rows_; ++r)
      if (v[r] != 0) col.push_back({r, v[r]});
    out.columns_.push_back(std::move(col));
  }
  return out;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix out(n, n);
  for (int i = 0; i < n; ++i) out.columns_[i].push_back({i, 1});
  return out;
}

}  // namespace kholag
