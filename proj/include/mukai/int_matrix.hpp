#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "mukai/integer.hpp"

namespace mukai {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& entries);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> to_rows() const;

  IntMatrix transpose() const;
  bool is_symmetric() const;

  /// Matrix-vector product; throws DimensionError on size mismatch.
  IntVector apply(std::span<const Integer> v) const;

  /// Place `block` with its top-left corner at (row, col).
  void set_block(std::size_t row, std::size_t col, const IntMatrix& block);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& m);
  friend IntMatrix operator-(const IntMatrix& m);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Symmetric bilinear form x^T G y.
Integer bilinear(const IntMatrix& gram, std::span<const Integer> x, std::span<const Integer> y);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

/// Exact inverse over Q, returned only when it is integral.
std::optional<IntMatrix> integral_inverse(const IntMatrix& m);

/// Smith normal form with transforms: left * m * right == diag, where left and
/// right are unimodular and diag has non-negative entries d_0 | d_1 | ... on
/// its main diagonal (the first `rank` of them non-zero).
struct SmithForm {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;
  std::size_t rank = 0;

  IntVector invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Integral solution x of m * x == rhs, if one exists.
std::optional<IntVector> solve_integral(const IntMatrix& m, std::span<const Integer> rhs);
std::optional<IntVector> solve_integral(const SmithForm& snf, std::span<const Integer> rhs);

/// Inertia of a symmetric matrix, computed by exact congruence
/// diagonalization over Q.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

Inertia inertia(const IntMatrix& symmetric);

}  // namespace mukai
