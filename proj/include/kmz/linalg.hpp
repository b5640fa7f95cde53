#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kmz/rational.hpp"

namespace kmz {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_columns(std::size_t rows, const std::vector<RatVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVector column(std::size_t c) const;
  RatMatrix transpose() const;
  RatMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  RatMatrix operator*(const RatMatrix& rhs) const;
  RatVector operator*(std::span<const Rational> v) const;
  RatMatrix& operator*=(const Rational& s);
  RatMatrix operator+(const RatMatrix& rhs) const;

  bool operator==(const RatMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Indices of the first maximal linearly independent set of columns, scanning
/// left to right. Fraction-free (Bareiss) elimination on an integer-scaled copy.
std::vector<std::size_t> independent_columns(const RatMatrix& m);

/// Pivot columns as in independent_columns, plus every column written in terms
/// of them: column c = sum_i coefficients(i, c) * column pivots[i].
struct ColumnRelations {
  std::vector<std::size_t> pivots;
  RatMatrix coefficients;
};
ColumnRelations column_relations(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Solves a * x = b for square nonsingular a. Fraction-free forward
/// elimination; throws Error(InvalidArgument) if a is singular.
RatMatrix solve(const RatMatrix& a, const RatMatrix& b);
RatMatrix inverse(const RatMatrix& a);

/// Exact determinant (Bareiss).
Rational determinant(const RatMatrix& a);

/// Column Hermite normal form of the lattice spanned by the given rational
/// columns in Q^dim. The result is dim x dim lower triangular with positive
/// diagonal and every entry left of a pivot reduced into [0, pivot).
/// Throws Error(InvalidArgument) if the columns do not have full rank.
RatMatrix hermite_normal_form(std::size_t dim, const std::vector<RatVector>& generators);

/// Coefficients x with hnf * x = v (forward substitution on the triangular
/// basis). The lattice contains v iff every coefficient is an integer.
RatVector lattice_coordinates(const RatMatrix& hnf, std::span<const Rational> v);

}  // namespace kmz
