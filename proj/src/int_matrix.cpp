#include "mukai/int_matrix.hpp"

#include <algorithm>
#include <utility>

#include "mukai/errors.hpp"

namespace mukai {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntVector IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) {
    throw DimensionError("IntMatrix::apply: vector of length " + std::to_string(v.size()) +
                         " for a matrix with " + std::to_string(cols_) + " columns");
  }
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

void IntMatrix::set_block(std::size_t row, std::size_t col, const IntMatrix& block) {
  if (row + block.rows() > rows_ || col + block.cols() > cols_) {
    throw DimensionError("IntMatrix::set_block: block does not fit");
  }
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) (*this)(row + i, col + j) = block(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("IntMatrix: product of incompatible shapes");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("IntMatrix: sum of shapes");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("IntMatrix: difference of shapes");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix operator*(const Integer& s, const IntMatrix& m) {
  IntMatrix c = m;
  for (auto& x : c.data_) x *= s;
  return c;
}

IntMatrix operator-(const IntMatrix& m) {
  IntMatrix c = m;
  for (auto& x : c.data_) x = -x;
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Integer bilinear(const IntMatrix& gram, std::span<const Integer> x, std::span<const Integer> y) {
  if (x.size() != gram.rows() || y.size() != gram.cols()) {
    throw DimensionError("bilinear: vectors of length " + std::to_string(x.size()) + ", " +
                         std::to_string(y.size()) + " for a rank-" + std::to_string(gram.rows()) +
                         " form");
  }
  Integer acc = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < gram.cols(); ++j) row += gram(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return Integer(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<IntMatrix> integral_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("integral_inverse: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (x.get_den() != 1) return std::nullopt;
      out(i, j) = x.get_num();
    }
  }
  return out;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(i, j), m(k, j));
}

void swap_cols(IntMatrix& m, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, j), m(i, k));
}

// row_i += f * row_k
void add_row(IntMatrix& m, std::size_t i, std::size_t k, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += f * m(k, j);
}

// col_j += f * col_k
void add_col(IntMatrix& m, std::size_t j, std::size_t k, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) += f * m(i, k);
}

Integer floor_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntVector SmithForm::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(diag(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& a = s.diag;
  const std::size_t limit = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    // Smallest non-zero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < a.rows(); ++i) {
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        if (!found || abs(a(i, j)) < abs(a(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
        }
      }
    }
    if (!found) break;
    swap_rows(a, t, pi);
    swap_rows(s.left, t, pi);
    swap_cols(a, t, pj);
    swap_cols(s.right, t, pj);

    while (true) {
      // Move the smallest non-zero entry of row t / column t onto the diagonal.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < a.rows(); ++i)
        if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) { bi = i; bj = t; }
      for (std::size_t j = t + 1; j < a.cols(); ++j)
        if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) { bi = t; bj = j; }
      swap_rows(a, t, bi);
      swap_rows(s.left, t, bi);
      swap_cols(a, t, bj);
      swap_cols(s.right, t, bj);

      bool residue = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = floor_quotient(a(i, t), a(t, t));
        add_row(a, i, t, -q);
        add_row(s.left, i, t, -q);
        if (a(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = floor_quotient(a(t, j), a(t, t));
        add_col(a, j, t, -q);
        add_col(s.right, j, t, -q);
        if (a(t, j) != 0) residue = true;
      }
      if (residue) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool blocked = false;
      for (std::size_t i = t + 1; i < a.rows() && !blocked; ++i) {
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t()) == 0) {
            add_row(a, t, i, Integer(1));
            add_row(s.left, t, i, Integer(1));
            blocked = true;
            break;
          }
        }
      }
      if (!blocked) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < s.left.cols(); ++j) s.left(t, j) = -s.left(t, j);
    }
    s.rank = t + 1;
  }
  return s;
}

std::optional<IntVector> solve_integral(const SmithForm& snf, std::span<const Integer> rhs) {
  const IntVector lb = snf.left.apply(rhs);
  IntVector y(snf.right.rows(), Integer(0));
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < snf.rank) {
      const Integer& d = snf.diag(i, i);
      if (mpz_divisible_p(lb[i].get_mpz_t(), d.get_mpz_t()) == 0) return std::nullopt;
      y[i] = lb[i] / d;
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.right.apply(y);
}

std::optional<IntVector> solve_integral(const IntMatrix& m, std::span<const Integer> rhs) {
  if (rhs.size() != m.rows()) throw DimensionError("solve_integral: right-hand side length");
  return solve_integral(smith_normal_form(m), rhs);
}

Inertia inertia(const IntMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw PreconditionError("inertia: matrix is not symmetric");
  const std::size_t n = symmetric.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(symmetric(i, j));

  auto swap_index = [&](std::size_t i, std::size_t k) {
    std::swap(a[i], a[k]);
    for (auto& row : a) std::swap(row[i], row[k]);
  };
  // x_i <- x_i + x_k applied as a congruence.
  auto add_index = [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] += a[k][j];
    for (std::size_t j = 0; j < n; ++j) a[j][i] += a[j][k];
  };

  Inertia out;
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][piv] == 0) ++piv;
    if (piv == n) {
      // All remaining diagonal entries vanish; use an off-diagonal entry.
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a[i][j] != 0) {
            add_index(i, j);
            piv = i;
            found = true;
            break;
          }
        }
      }
      if (!found) break;
    }
    swap_index(k, piv);
    const Rational d = a[k][k];
    // Schur complement of the pivot.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / d;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = 0;
    if (d > 0) ++out.positive; else ++out.negative;
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

}  // namespace mukai
