#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mukai {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

Integer gcd(const Integer& a, const Integer& b);

/// Non-negative remainder of `a` modulo `m` (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

/// Modular inverse of `a` modulo `m`; throws PreconditionError if gcd(a, m) != 1.
Integer mod_inverse(const Integer& a, const Integer& m);

bool is_prime(const Integer& n);
bool is_prime(long n);

/// Upper bound for the radical of n (product of its distinct prime divisors).
/// Exact whenever trial division up to `trial_limit` leaves a cofactor that is
/// 1 or prime; otherwise the unfactored cofactor is used in place of its radical.
Integer radical_upper_bound(const Integer& n, unsigned long trial_limit = 100000);

/// Greatest common divisor of all entries (0 for an empty or all-zero vector).
Integer content(const IntVector& v);

IntVector make_vector(std::initializer_list<long> values);

/// `base^exp` for a non-negative exponent.
Integer power(const Integer& base, unsigned long exp);

bool fits_int64(const Integer& x);

std::string to_string(const Integer& x);
std::string to_string(const IntVector& v);

}  // namespace mukai
