#pragma once

#include <cstddef>
#include <optional>

#include "mukai/int_matrix.hpp"
#include "mukai/lattice.hpp"

namespace mukai {

/// Hom(F, E) as an abstract lattice: the polarization of the degree form and a
/// linear separability functional modulo the characteristic.
///
/// `deg_gram` is the matrix of bil(phi, psi) = deg(phi + psi) - deg phi - deg psi,
/// so deg(phi) = phi^T deg_gram phi / 2. An element phi is separable iff
/// tau * phi != 0 over F_p.
struct HomLattice {
  std::size_t rank = 0;
  IntMatrix deg_gram;
  long p = 0;
  IntMatrix tau;

  friend bool operator==(const HomLattice&, const HomLattice&) = default;
};

ValidationReport validate_hom_lattice(const HomLattice& hl);

Integer bil(const HomLattice& hl, const IntVector& phi, const IntVector& psi);
Integer degree(const HomLattice& hl, const IntVector& phi);

/// Numerical class l(phi, a, b) on E x F: a, b are the degrees on the E and F
/// factors and phi is an element of Hom(F, E).
struct ProductClass {
  Integer a;
  Integer b;
  IntVector phi;

  /// Coordinates (a, b, phi_1, ..., phi_m) used by to_lattice_spec.
  IntVector coordinates() const;
  static ProductClass from_coordinates(const IntVector& coords);

  friend ProductClass operator+(const ProductClass& x, const ProductClass& y);
  friend bool operator==(const ProductClass&, const ProductClass&) = default;
};

/// c1.a c2.b + c2.a c1.b - bil(c1.phi, c2.phi).
Integer product_pairing(const HomLattice& hl, const ProductClass& c1, const ProductClass& c2);

/// NS(E x F) = U + Hom(F, E)(-1) with reference class l(0, ample_a, ample_b).
LatticeSpec to_lattice_spec(const HomLattice& hl, long ample_a = 1, long ample_b = 1);

/// tau * phi reduced into [0, p).
IntVector tau_image(const HomLattice& hl, const IntVector& phi);

bool is_separable(const HomLattice& hl, const IntVector& phi);

struct SeparableShift {
  IntVector gamma;
  IntVector tau_value;
};

/// gamma = phi_insep + r xi_sep, separable whenever xi_sep is separable,
/// phi_insep is not, and gcd(r, p) = 1. Throws PreconditionError otherwise.
SeparableShift separability_shift(const HomLattice& hl, const IntVector& phi_insep,
                                  const IntVector& xi_sep, const Integer& r);

/// Pullback along an isogeny lambda: C -> E x F in NS coordinates.
/// `iota` maps source (E x F) coordinates to target (C) coordinates.
struct CoverDatum {
  IntMatrix iota;
  Integer degree = 1;
  Integer exponent = 1;
  int dim = 2;

  friend bool operator==(const CoverDatum&, const CoverDatum&) = default;
};

struct CoverCheck {
  bool shape = false;
  bool scaling = false;          // iota^T G_dst iota == degree G_src
  bool neron_inclusion = false;  // exponent^2 NS(dst) in image(iota)
  bool exponent_divides = false;
  IntVector invariant_factors;

  bool ok() const { return shape && scaling && neron_inclusion && exponent_divides; }
};

CoverCheck check_cover(const LatticeSpec& src, const LatticeSpec& dst, const CoverDatum& c);
bool validate_cover(const LatticeSpec& src, const LatticeSpec& dst, const CoverDatum& c);

/// Preimage x with iota x = l, if l lies in the image of the pullback.
std::optional<IntVector> pullback_preimage(const CoverDatum& c, const IntVector& l);

/// e^(2 dim) / deg_nu: degree of the complementary isogeny psi with
/// psi o nu = multiplication by e.
Integer complementary_degree(const Integer& e, int dim, const Integer& deg_nu);

}  // namespace mukai
