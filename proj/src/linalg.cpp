#include "kmz/linalg.hpp"

#include <utility>

#include "kmz/error.hpp"

namespace kmz {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

Integer row_denominator_lcm(const RatMatrix& m, std::size_t r) {
  Integer l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
  return l;
}

// Scales every row of [a | b] by the lcm of its denominators.
IntMatrix scaled_rows(const RatMatrix& a, const RatMatrix* b) {
  IntMatrix out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = row_denominator_lcm(a, r);
    if (b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row_denominator_lcm(*b, r).get_mpz_t());
    auto& row = out[r];
    row.reserve(a.cols() + (b ? b->cols() : 0));
    auto push = [&](const Rational& q) {
      Integer z = l / q.get_den();
      row.push_back(z * q.get_num());
    };
    for (std::size_t c = 0; c < a.cols(); ++c) push(a(r, c));
    if (b)
      for (std::size_t c = 0; c < b->cols(); ++c) push((*b)(r, c));
  }
  return out;
}

// Bareiss echelon form over the first `ncols` columns. Returns pivot columns;
// the rows of m are permuted so that pivot k sits in row k.
std::vector<std::size_t> bareiss_echelon(IntMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t nrows = m.size();
  const std::size_t width = nrows ? m[0].size() : 0;
  Integer prev = 1;
  Integer tmp;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < nrows; ++c) {
    std::size_t p = row;
    while (p < nrows && m[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[row]);
    const Integer& piv = m[row][c];
    for (std::size_t r = row + 1; r < nrows; ++r) {
      const Integer lead = m[r][c];
      for (std::size_t j = c + 1; j < width; ++j) {
        mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), m[r][j].get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), m[row][j].get_mpz_t());
        mpz_divexact(m[r][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = piv;
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<RatVector>& columns) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  return m;
}

RatVector RatMatrix::column(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  RatMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(Errc::InvalidArgument, "matrix product shape mismatch");
  // Clear denominators per row of lhs and per column of rhs, multiply over Z,
  // and divide once at the end.
  std::vector<Integer> row_den(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) != 0) mpz_lcm(row_den[r].get_mpz_t(), row_den[r].get_mpz_t(), a.get_den_mpz_t());
    }
  std::vector<Integer> col_den(rhs.cols_, 1);
  for (std::size_t k = 0; k < rhs.rows_; ++k)
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      const Rational& b = rhs(k, c);
      if (sgn(b) != 0) mpz_lcm(col_den[c].get_mpz_t(), col_den[c].get_mpz_t(), b.get_den_mpz_t());
    }
  // Nonzero scaled entries of rhs, row by row.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> rhs_rows(rhs.rows_);
  Integer q;
  for (std::size_t k = 0; k < rhs.rows_; ++k)
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      const Rational& b = rhs(k, c);
      if (sgn(b) == 0) continue;
      mpz_divexact(q.get_mpz_t(), col_den[c].get_mpz_t(), b.get_den_mpz_t());
      rhs_rows[k].emplace_back(c, q * b.get_num());
    }
  RatMatrix out(rows_, rhs.cols_);
  std::vector<Integer> acc(rhs.cols_);
  Integer scaled;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto& x : acc) x = 0;
    bool any = false;
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0 || rhs_rows[k].empty()) continue;
      mpz_divexact(q.get_mpz_t(), row_den[r].get_mpz_t(), a.get_den_mpz_t());
      scaled = q * a.get_num();
      for (const auto& [c, b] : rhs_rows[k]) mpz_addmul(acc[c].get_mpz_t(), scaled.get_mpz_t(), b.get_mpz_t());
      any = true;
    }
    if (!any) continue;
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      if (sgn(acc[c]) == 0) continue;
      Rational& o = out(r, c);
      mpz_swap(o.get_num_mpz_t(), acc[c].get_mpz_t());
      mpz_mul(o.get_den_mpz_t(), row_den[r].get_mpz_t(), col_den[c].get_mpz_t());
      o.canonicalize();
    }
  }
  return out;
}

RatVector RatMatrix::operator*(std::span<const Rational> v) const {
  if (cols_ != v.size()) throw Error(Errc::InvalidArgument, "matrix-vector shape mismatch");
  RatVector out(rows_);
  Rational tmp;
  for (std::size_t k = 0; k < cols_; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), v[k].get_mpq_t());
      out[r] += tmp;
    }
  }
  return out;
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

RatMatrix RatMatrix::operator+(const RatMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(Errc::InvalidArgument, "matrix sum shape mismatch");
  RatMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

std::vector<std::size_t> independent_columns(const RatMatrix& m) {
  if (m.empty()) return {};
  IntMatrix im = scaled_rows(m, nullptr);
  return bareiss_echelon(im, m.cols());
}

ColumnRelations column_relations(const RatMatrix& m) {
  ColumnRelations out;
  if (m.empty()) {
    out.coefficients = RatMatrix(0, m.cols());
    return out;
  }
  // Fraction-free Gauss-Jordan: after the step for pivot k every pivot row
  // carries the same leading entry, the current pivot.
  IntMatrix a = scaled_rows(m, nullptr);
  const std::size_t nrows = a.size();
  const std::size_t width = m.cols();
  Integer prev = 1;
  Integer tmp;
  std::size_t row = 0;
  for (std::size_t c = 0; c < width && row < nrows; ++c) {
    std::size_t p = row;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(a[p], a[row]);
    const Integer piv = a[row][c];
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row) continue;
      const Integer lead = a[r][c];
      for (std::size_t j = 0; j < width; ++j) {
        if (j == c) continue;
        if (sgn(lead) == 0 || sgn(a[row][j]) == 0) {
          if (sgn(a[r][j]) == 0) continue;
          mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), a[r][j].get_mpz_t());
        } else {
          mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), a[r][j].get_mpz_t());
          mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), a[row][j].get_mpz_t());
        }
        mpz_divexact(a[r][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = piv;
    out.pivots.push_back(c);
    ++row;
  }
  const std::size_t d = out.pivots.size();
  out.coefficients = RatMatrix(d, width);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(a[i][j]) != 0) out.coefficients(i, j) = fraction(a[i][j], prev);
  return out;
}

std::size_t rank(const RatMatrix& m) { return independent_columns(m).size(); }

RatMatrix solve(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw Error(Errc::InvalidArgument, "solve: shape mismatch");
  IntMatrix m = scaled_rows(a, &b);
  if (bareiss_echelon(m, n).size() != n) throw Error(Errc::InvalidArgument, "solve: singular matrix");
  RatMatrix x(n, b.cols());
  Rational acc;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      acc = m[ii][n + c];
      for (std::size_t j = ii + 1; j < n; ++j)
        if (m[ii][j] != 0) acc -= Rational(m[ii][j]) * x(j, c);
      acc /= Rational(m[ii][ii]);
      x(ii, c) = acc;
    }
  }
  return x;
}

RatMatrix inverse(const RatMatrix& a) { return solve(a, RatMatrix::identity(a.rows())); }

Rational determinant(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(Errc::InvalidArgument, "determinant: not square");
  if (n == 0) return 1;
  Rational scale = 1;
  for (std::size_t r = 0; r < n; ++r) scale *= Rational(row_denominator_lcm(a, r));
  IntMatrix m = scaled_rows(a, nullptr);
  // Track row swaps for the sign.
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[k][k] * m[r][j] - m[r][k] * m[k][j];
        mpz_divexact(m[r][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][k] = 0;
    }
    prev = m[k][k];
  }
  Rational det(m[n - 1][n - 1]);
  if (sign < 0) det = -det;
  return det / scale;
}

namespace {

// Incremental integer column HNF: cols[r] is the basis column with pivot in
// row r (empty while no pivot exists yet).
class HnfBuilder {
 public:
  explicit HnfBuilder(std::size_t dim) : dim_(dim), cols_(dim) {}

  void insert(std::vector<Integer> v) {
    std::vector<std::size_t> touched;
    for (std::size_t r = 0; r < dim_; ++r) {
      if (v[r] == 0) continue;
      auto& piv = cols_[r];
      touched.push_back(r);
      if (piv.empty()) {
        if (v[r] < 0)
          for (auto& x : v) x = -x;
        piv = std::move(v);
        break;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), piv[r].get_mpz_t(), v[r].get_mpz_t());
      Integer pa = piv[r] / g, va = v[r] / g;
      for (std::size_t k = r; k < dim_; ++k) {
        Integer np = s * piv[k] + t * v[k];
        Integer nv = pa * v[k] - va * piv[k];
        piv[k] = std::move(np);
        v[k] = std::move(nv);
      }
      if (piv[r] < 0)
        for (std::size_t k = r; k < dim_; ++k) piv[k] = -piv[k];
    }
    // Keep entries of the modified columns bounded by the current pivots.
    for (auto it = touched.rbegin(); it != touched.rend(); ++it)
      for (std::size_t k = *it + 1; k < dim_; ++k) reduce_entry(cols_[*it], k);
  }

  bool full_rank() const {
    for (const auto& c : cols_)
      if (c.empty()) return false;
    return true;
  }

  // Reduces every entry left of a pivot into [0, pivot).
  void reduce_all() {
    for (std::size_t r = 0; r < dim_; ++r) reduce_left_of(r);
  }

  const std::vector<Integer>& column(std::size_t r) const { return cols_[r]; }

 private:
  void reduce_left_of(std::size_t r) {
    for (std::size_t c = 0; c < r; ++c)
      if (!cols_[c].empty()) reduce_entry(cols_[c], r);
  }

  void reduce_entry(std::vector<Integer>& col, std::size_t k) {
    const auto& piv = cols_[k];
    if (piv.empty() || &col == &piv || col[k] == 0) return;
    if (col[k] >= 0 && col[k] < piv[k]) return;
    Integer q = floor_div(col[k], piv[k]);
    for (std::size_t j = k; j < dim_; ++j) col[j] -= q * piv[j];
  }

  std::size_t dim_;
  std::vector<std::vector<Integer>> cols_;
};

}  // namespace

RatMatrix hermite_normal_form(std::size_t dim, const std::vector<RatVector>& generators) {
  if (dim == 0) return RatMatrix(0, 0);
  Integer den = 1;
  for (const auto& g : generators)
    for (const auto& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  HnfBuilder builder(dim);
  for (const auto& g : generators) {
    std::vector<Integer> v(dim);
    bool nonzero = false;
    for (std::size_t r = 0; r < dim; ++r) {
      v[r] = (den / g[r].get_den()) * g[r].get_num();
      nonzero = nonzero || v[r] != 0;
    }
    if (nonzero) builder.insert(std::move(v));
  }
  if (!builder.full_rank()) throw Error(Errc::InvalidArgument, "lattice generators are not of full rank");
  builder.reduce_all();
  RatMatrix h(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto& col = builder.column(c);
    for (std::size_t r = 0; r < dim; ++r) {
      Rational q(col[r], den);
      q.canonicalize();
      h(r, c) = q;
    }
  }
  return h;
}

RatVector lattice_coordinates(const RatMatrix& hnf, std::span<const Rational> v) {
  const std::size_t n = hnf.rows();
  RatVector x(n);
  for (std::size_t r = 0; r < n; ++r) {
    Rational acc = v[r];
    for (std::size_t c = 0; c < r; ++c)
      if (sgn(hnf(r, c)) != 0) acc -= hnf(r, c) * x[c];
    x[r] = acc / hnf(r, r);
  }
  return x;
}

}  // namespace kmz
