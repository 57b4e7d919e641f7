#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kholag {

// Column-compressed integer matrix. Columns hold (row, value) pairs sorted by
// row with no explicit zeros.
class SparseMatrix {
 public:
  struct Entry {
    int row;
    std::int64_t value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using Column = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), columns_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  const Column& column(int c) const { return columns_[c]; }
  const std::vector<Column>& columns() const { return columns_; }

  // Adds `value` to entry (row, col).
  void add(int row, int col, std::int64_t value);
  std::int64_t at(int row, int col) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  // this * other
  SparseMatrix operator*(const SparseMatrix& other) const;
  SparseMatrix operator-(const SparseMatrix& other) const;
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  SparseMatrix submatrix(std::span<const int> row_ids, std::span<const int> col_ids) const;
  // Appends the given vectors as extra columns.
  SparseMatrix with_columns(const std::vector<std::vector<std::int64_t>>& extra) const;

  static SparseMatrix identity(int n);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  int rows_ = 0;
  std::vector<Column> columns_;
};

}  // namespace kholag
