#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mukai/int_matrix.hpp"
#include "mukai/lattice.hpp"

namespace mukai {

/// Shift [1]: acts on numerical classes by -1.
struct Shift {
  friend bool operator==(const Shift&, const Shift&) = default;
};

/// Tensoring with the n-th power of a line bundle of class b:
/// (r, l, chi) -> (r, l + r n b, chi + n l.b + r n^2 b.b / 2).
struct Twist {
  IntVector b;
  Integer n;
  friend bool operator==(const Twist&, const Twist&) = default;
};

/// Transform with kernel the Poincare bundle: (r, l, chi) -> (chi, sigma l, r).
/// sigma must be an involutive isometry of NS.
struct MukaiSwap {
  IntMatrix sigma;
  friend bool operator==(const MukaiSwap&, const MukaiSwap&) = default;
};

/// Arbitrary integral isometry of the extended Mukai lattice.
struct Custom {
  IntMatrix m;
  friend bool operator==(const Custom&, const Custom&) = default;
};

using Generator = std::variant<Shift, Twist, MukaiSwap, Custom>;

/// MukaiSwap with sigma = -Id, the default choice.
MukaiSwap default_swap(std::size_t rank);

std::string generator_name(const Generator& g);

/// Integral (rho+2)x(rho+2) matrix of a generator. Throws PreconditionError for
/// invalid generators (bad dimensions, non-involutive sigma, non-isometric
/// custom matrix).
IntMatrix generator_matrix(const LatticeSpec& spec, const Generator& g);

/// Generator action evaluated from its closed formula, without forming a matrix.
MukaiVector apply_generator(const LatticeSpec& spec, const Generator& g, const MukaiVector& v);

Generator inverse_generator(const LatticeSpec& spec, const Generator& g);

/// A composite of generator actions. Generators are stored in functor
/// composition order: the word [g1, g2, ..., gk] acts as g1 o g2 o ... o gk,
/// so gk is applied first.
class IsometryWord {
 public:
  /// Identity word.
  explicit IsometryWord(LatticeSpec spec);
  IsometryWord(LatticeSpec spec, std::vector<Generator> generators);

  const LatticeSpec& spec() const { return spec_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const IntMatrix& matrix() const { return matrix_; }
  /// Number of MukaiSwap generators mod 2 (0: same surface, 1: dual surface).
  int dual_parity() const { return dual_parity_; }
  std::size_t length() const { return generators_.size(); }

  /// g o (*this): the generator is applied after the current word.
  IsometryWord then(const Generator& g) const;

  friend bool operator==(const IsometryWord& a, const IsometryWord& b) {
    return a.spec_ == b.spec_ && a.generators_ == b.generators_;
  }

 private:
  friend IsometryWord compose(const IsometryWord& outer, const IsometryWord& inner);

  LatticeSpec spec_;
  std::vector<Generator> generators_;
  IntMatrix matrix_;
  int dual_parity_ = 0;
};

/// outer o inner. Throws PreconditionError when the lattices differ.
IsometryWord compose(const IsometryWord& outer, const IsometryWord& inner);

MukaiVector apply(const IsometryWord& w, const MukaiVector& v);

/// Whether the word fixes the point class (0, 0, 1).
bool is_filtered(const IsometryWord& w);

/// m^T Q m == Q for the extended Mukai form Q and det m = +-1.
bool validate_isometry(const LatticeSpec& spec, const IntMatrix& m);

IsometryWord inverse(const IsometryWord& w);

/// Deterministic word of `length` generators drawn from Shift,
/// Twist(b, n) with b in [-2, 2]^rho and n in [-3, 3], and MukaiSwap(-Id).
IsometryWord random_isometry(const LatticeSpec& spec, std::uint64_t seed, std::size_t length);

}  // namespace mukai
