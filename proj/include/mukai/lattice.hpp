#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mukai/int_matrix.hpp"
#include "mukai/integer.hpp"

namespace mukai {

/// Even intersection form on NS of signature (1, rank-1) together with a
/// reference ample class.
struct LatticeSpec {
  std::size_t rank = 0;
  IntMatrix gram;
  IntVector ample;

  /// Intersection product x . y under `gram`.
  Integer dot(const IntVector& x, const IntVector& y) const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// Numerical Mukai vector (r, l, chi) in Z + NS + Z.
struct MukaiVector {
  Integer r;
  IntVector l;
  Integer chi;

  /// Class of a point, (0, 0, 1).
  static MukaiVector point(std::size_t rank);
  /// Class of the structure sheaf, (1, 0, 0).
  static MukaiVector unit(std::size_t rank);

  /// Flat coordinates (r, l_1, ..., l_rho, chi).
  IntVector coordinates() const;
  static MukaiVector from_coordinates(const IntVector& coords);

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

std::string to_string(const MukaiVector& v);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string message) { violations.push_back(std::move(message)); }
};

ValidationReport validate_lattice(const LatticeSpec& spec);

/// <v, w> = l.l' - r chi' - chi r'.
Integer mukai_pairing(const LatticeSpec& spec, const MukaiVector& v, const MukaiVector& w);

bool is_isotropic(const LatticeSpec& spec, const MukaiVector& v);

/// l^2 > 0 and l.h > 0 for the reference ample class h.
bool is_ample(const LatticeSpec& spec, const IntVector& l);

/// Numerical hypotheses for a fine moduli space of stable sheaves that is
/// derived equivalent to the surface: positive rank, ample first Chern class,
/// gcd(r, chi) = 1, and an isotropic vector.
struct ModuliCertificate {
  bool positive_rank = false;  // E1
  bool ample = false;          // E2
  bool coprime = false;        // E3
  bool isotropic = false;
  Integer l_square;
  Integer l_dot_h;
  Integer gcd_r_chi;
  Integer self_pairing;

  bool pass() const { return positive_rank && ample && coprime && isotropic; }
};

ModuliCertificate moduli_ready(const LatticeSpec& spec, const MukaiVector& v);

/// Gram matrix of the extended Mukai form on (r, l, chi) coordinates.
IntMatrix extended_gram(const LatticeSpec& spec);

/// Hyperbolic plane [[0,1],[1,0]] with reference class (a, b).
LatticeSpec hyperbolic_plane(long a = 1, long b = 1);

}  // namespace mukai
