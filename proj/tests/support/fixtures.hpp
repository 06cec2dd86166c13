#pragma once

#include "mukai/lattice.hpp"
#include "mukai/product_ns.hpp"

namespace mukai::testing {

/// Rank-1 Hom lattice generated by phi0 of the given degree, tau(phi0) = tau.
HomLattice hom_rank1(long deg, long p, long tau = 1);

/// Norm form of a maximal order in the quaternion algebra ramified at p and
/// infinity (p = 3 mod 4): basis 1, i, (1+j)/2, (i+k)/2 with i^2 = -1, j^2 = -p.
/// tau is reduction modulo the unique two-sided ideal of norm p.
HomLattice hom_quaternion(long p);

struct CoverFixture {
  LatticeSpec product;  // NS(E x F)
  LatticeSpec target;   // NS(C)
  CoverDatum cover;
};

/// Identity pullback on `spec`.
CoverFixture identity_cover(const LatticeSpec& spec);

/// Cyclic cover of degree d: target H + d N with N = -deg_gram, pullback
/// diag(1, d) + Id, exponent d.
CoverFixture cyclic_cover(const HomLattice& hl, long d);

/// Dual cover: same target, pullback diag(d, d^2) + d Id of degree d^3 and
/// exponent d.
CoverFixture dual_cover(const HomLattice& hl, long d);

}  // namespace mukai::testing

namespace mukai::testing {

/// Intersection number of l(phi, a, b) and l(psi, c, d) computed in the basis
/// u = [E x pt], v = [pt x F], gamma_phi (graph classes), with
/// l(phi, a, b) = gamma_phi + (a - 1) v + (b - deg phi) u.
Integer basis_expansion_pairing(const HomLattice& hl, const ProductClass& x, const ProductClass& y);

}  // namespace mukai::testing
