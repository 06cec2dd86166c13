#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mukai {

/// Element c0 + c1 x of F_p[x] / (x^2 + c).
struct Fp2 {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;

  friend bool operator==(const Fp2&, const Fp2&) = default;
  /// Lexicographic order on (c0, c1), used for all deterministic orderings.
  friend auto operator<=>(const Fp2&, const Fp2&) = default;
};

std::string to_string(const Fp2& z);

/// F_{p^2} with the modulus x^2 + c for the least c in [1, p) such that -c is a
/// non-residue modulo p.
class Fp2Field {
 public:
  /// Throws PreconditionError unless p is an odd prime below 2^31.
  explicit Fp2Field(long p);

  long p() const { return p_; }
  /// Constant term c of the modulus x^2 + c.
  long c() const { return c_; }
  /// Ascending coefficients of the modulus: [c, 0, 1].
  std::vector<long> modulus() const { return {c_, 0, 1}; }
  std::size_t size() const { return static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_); }

  Fp2 make(std::int64_t c0, std::int64_t c1 = 0) const;
  bool contains(const Fp2& z) const;
  /// The k-th element in (c0, c1) lexicographic order, 0 <= k < p^2.
  Fp2 element(std::size_t k) const;
  std::size_t index(const Fp2& z) const;

  Fp2 add(const Fp2& x, const Fp2& y) const;
  Fp2 sub(const Fp2& x, const Fp2& y) const;
  Fp2 neg(const Fp2& x) const;
  Fp2 mul(const Fp2& x, const Fp2& y) const;
  Fp2 scale(const Fp2& x, std::int64_t k) const;
  Fp2 pow(Fp2 x, std::uint64_t e) const;
  /// Throws PreconditionError on zero.
  Fp2 inv(const Fp2& x) const;
  Fp2 div(const Fp2& x, const Fp2& y) const { return mul(x, inv(y)); }
  Fp2 conj(const Fp2& x) const;
  /// Norm to F_p, x * conj(x).
  std::int64_t norm(const Fp2& x) const;
  /// Quadratic character of F_{p^2}: 0, 1 or -1.
  int chi(const Fp2& x) const;

  bool is_zero(const Fp2& x) const { return x.c0 == 0 && x.c1 == 0; }

  friend bool operator==(const Fp2Field& a, const Fp2Field& b) { return a.p_ == b.p_; }

 private:
  std::int64_t red(std::int64_t v) const;

  long p_;
  long c_;
  std::vector<signed char> legendre_;  // Legendre symbol of each residue mod p
};

}  // namespace mukai
