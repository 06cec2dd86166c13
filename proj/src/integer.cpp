#include "mukai/integer.hpp"

#include "mukai/errors.hpp"

namespace mukai {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer inv;
  if (m <= 0 || mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return Integer(0);
    throw PreconditionError("mod_inverse: " + to_string(a) + " is not invertible modulo " +
                            to_string(m));
  }
  return inv;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(long n) { return is_prime(Integer(n)); }

Integer radical_upper_bound(const Integer& n, unsigned long trial_limit) {
  Integer rest = abs(n);
  if (rest == 0) return Integer(0);
  Integer rad = 1;
  for (unsigned long q = 2; q <= trial_limit && Integer(q) * q <= rest; ++q) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), q) != 0) {
      rad *= q;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), q) != 0) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
      }
    }
  }
  // A perfect-power cofactor has the same radical as its root.
  for (bool reduced = true; reduced && rest > 1;) {
    reduced = false;
    for (unsigned long k = 2; Integer(1) << k <= rest; ++k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), rest.get_mpz_t(), k) != 0) {
        rest = root;
        reduced = true;
        break;
      }
    }
  }
  if (rest > 1) rad *= rest;
  return rad;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector make_vector(std::initializer_list<long> values) {
  IntVector out;
  out.reserve(values.size());
  for (long x : values) out.emplace_back(x);
  return out;
}

Integer power(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

bool fits_int64(const Integer& x) {
  static const Integer lo("-9223372036854775808");
  static const Integer hi("9223372036854775807");
  return x >= lo && x <= hi;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

}  // namespace mukai
