#include "mukai/fp2.hpp"

#include "mukai/errors.hpp"
#include "mukai/integer.hpp"

namespace mukai {

std::string to_string(const Fp2& z) {
  return "(" + std::to_string(z.c0) + "," + std::to_string(z.c1) + ")";
}

Fp2Field::Fp2Field(long p) : p_(p), c_(0) {
  if (p < 3 || p >= (1L << 31) || !is_prime(p)) {
    throw PreconditionError("field characteristic must be an odd prime, got " + std::to_string(p));
  }
  legendre_.assign(static_cast<std::size_t>(p), -1);
  legendre_[0] = 0;
  for (std::int64_t x = 1; x < p; ++x) legendre_[static_cast<std::size_t>(x * x % p)] = 1;
  for (long c = 1; c < p; ++c) {
    if (legendre_[static_cast<std::size_t>(p - c)] == -1) {
      c_ = c;
      break;
    }
  }
}

std::int64_t Fp2Field::red(std::int64_t v) const {
  v %= p_;
  return v < 0 ? v + p_ : v;
}

Fp2 Fp2Field::make(std::int64_t c0, std::int64_t c1) const { return {red(c0), red(c1)}; }

bool Fp2Field::contains(const Fp2& z) const {
  return z.c0 >= 0 && z.c0 < p_ && z.c1 >= 0 && z.c1 < p_;
}

Fp2 Fp2Field::element(std::size_t k) const {
  auto p = static_cast<std::size_t>(p_);
  return {static_cast<std::int64_t>(k / p), static_cast<std::int64_t>(k % p)};
}

std::size_t Fp2Field::index(const Fp2& z) const {
  return static_cast<std::size_t>(z.c0) * static_cast<std::size_t>(p_) +
         static_cast<std::size_t>(z.c1);
}

Fp2 Fp2Field::add(const Fp2& x, const Fp2& y) const {
  return {red(x.c0 + y.c0), red(x.c1 + y.c1)};
}

Fp2 Fp2Field::sub(const Fp2& x, const Fp2& y) const {
  return {red(x.c0 - y.c0), red(x.c1 - y.c1)};
}

Fp2 Fp2Field::neg(const Fp2& x) const { return {red(-x.c0), red(-x.c1)}; }

Fp2 Fp2Field::mul(const Fp2& x, const Fp2& y) const {
  // (a + bx)(c + dx) = ac - c_ bd + (ad + bc) x
  std::int64_t bd = red(x.c1 * y.c1);
  return {red(x.c0 * y.c0 - red(c_ * bd)), red(x.c0 * y.c1 + x.c1 * y.c0)};
}

Fp2 Fp2Field::scale(const Fp2& x, std::int64_t k) const {
  k = red(k);
  return {red(x.c0 * k), red(x.c1 * k)};
}

Fp2 Fp2Field::pow(Fp2 x, std::uint64_t e) const {
  Fp2 out{1, 0};
  while (e) {
    if (e & 1U) out = mul(out, x);
    x = mul(x, x);
    e >>= 1U;
  }
  return out;
}

Fp2 Fp2Field::conj(const Fp2& x) const { return {x.c0, red(-x.c1)}; }

std::int64_t Fp2Field::norm(const Fp2& x) const {
  return red(x.c0 * x.c0 + red(c_ * red(x.c1 * x.c1)));
}

Fp2 Fp2Field::inv(const Fp2& x) const {
  if (is_zero(x)) throw PreconditionError("division by zero in F_p^2");
  Integer n_inv = mod_inverse(Integer(static_cast<long>(norm(x))), Integer(p_));
  return scale(conj(x), n_inv.get_si());
}

int Fp2Field::chi(const Fp2& x) const {
  return legendre_[static_cast<std::size_t>(norm(x))];
}

}  // namespace mukai
