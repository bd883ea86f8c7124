#pragma once

// Exact linear algebra over Q.
//
// Vectors are sparse (sorted index/value pairs). Elimination is done on
// integer rows (each row kept primitive, i.e. divided by the gcd of its
// entries) and only converted back to rationals once the reduced row
// echelon form is complete. When two rows compete for the same pivot
// column, the one whose leading entry has the smaller magnitude is kept as
// the pivot row.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sullivan {

using Rational = mpq_class;

class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);  // sorts, merges, drops zeros

  static SparseVector unit(std::size_t index);

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t nonzeros() const { return entries_.size(); }
  [[nodiscard]] Rational at(std::size_t index) const;
  [[nodiscard]] std::optional<std::size_t> leading() const;

  SparseVector operator+(const SparseVector& other) const;
  SparseVector operator-(const SparseVector& other) const;
  SparseVector operator*(const Rational& scalar) const;
  bool operator==(const SparseVector& other) const = default;

  // Entries with index < bound.
  [[nodiscard]] SparseVector head(std::size_t bound) const;
  // Entries with index >= bound, re-indexed from zero.
  [[nodiscard]] SparseVector tail(std::size_t bound) const;
  [[nodiscard]] SparseVector shifted(std::size_t offset) const;

 private:
  std::vector<Entry> entries_;
};

// Column-stored matrix; column j is the image of the j-th source basis vector.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols);
  SparseMatrix(std::size_t rows, std::vector<SparseVector> columns);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return columns_.size(); }
  [[nodiscard]] const std::vector<SparseVector>& columns() const { return columns_; }
  [[nodiscard]] const SparseVector& column(std::size_t j) const { return columns_[j]; }
  [[nodiscard]] Rational at(std::size_t i, std::size_t j) const { return columns_[j].at(i); }
  [[nodiscard]] bool is_zero() const;

  [[nodiscard]] SparseVector apply(const SparseVector& v) const;
  [[nodiscard]] SparseMatrix compose(const SparseMatrix& rhs) const;  // this * rhs

  bool operator==(const SparseMatrix& other) const = default;

 private:
  std::size_t rows_;
  std::vector<SparseVector> columns_;
};

// Reduced row echelon form of a span. Rows are sorted by pivot, each pivot
// entry is 1 and every other row is zero in that pivot column.
struct Echelon {
  std::vector<SparseVector> rows;
  std::vector<std::size_t> pivots;

  [[nodiscard]] std::size_t rank() const { return rows.size(); }
  // Subtracts multiples of the rows so that v vanishes in every pivot column.
  [[nodiscard]] SparseVector reduce(const SparseVector& v) const;
  [[nodiscard]] bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  // Coefficients of v in terms of rows; nullopt when v is not in the span.
  [[nodiscard]] std::optional<SparseVector> coordinates(const SparseVector& v) const;
};

// Result of reducing the columns of a matrix while remembering which
// combination of columns produced each row.
struct ColumnReduction {
  Echelon image;                          // RREF of the column space
  std::vector<SparseVector> preimages;    // image.rows[i] = M * preimages[i]
  Echelon kernel;                         // RREF basis of the null space

  [[nodiscard]] std::size_t rank() const { return image.rank(); }
  // Some x with M x = b, or nullopt.
  [[nodiscard]] std::optional<SparseVector> solve(const SparseVector& b) const;
};

Echelon row_reduce(const std::vector<SparseVector>& vectors);
ColumnReduction reduce_columns(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

// True iff the column spaces of a and b coincide.
bool same_span(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b);

}  // namespace sullivan
