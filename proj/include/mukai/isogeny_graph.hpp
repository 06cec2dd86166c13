#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mukai/fp2.hpp"
#include "mukai/integer.hpp"

namespace mukai {

/// Short Weierstrass curve y^2 = x^3 + a x + b over F_{p^2}.
struct CurveSS {
  Fp2 a;
  Fp2 b;
  Fp2 j;
};

/// j = 1728 * 4a^3 / (4a^3 + 27b^2). Throws PreconditionError for singular curves.
Fp2 j_invariant(const Fp2Field& f, const Fp2& a, const Fp2& b);

/// A curve with the given j-invariant: y^2 = x^3 + 1 for j = 0, y^2 = x^3 + x
/// for j = 1728, otherwise a = 3j(1728 - j), b = 2j(1728 - j)^2.
CurveSS curve_from_j(const Fp2Field& f, const Fp2& j);

/// t with #E(F_{p^2}) = p^2 + 1 - t, by scanning every x in F_{p^2}.
long frobenius_trace(const Fp2Field& f, const CurveSS& c);

/// Exact point count decides supersingularity (p | t). Rejects p = 3.
bool is_supersingular(const Fp2Field& f, const Fp2& j);

/// Coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2); it lies in F_{p^2}
/// and vanishes exactly on supersingular curves.
Fp2 hasse_invariant(const Fp2Field& f, const CurveSS& c);

/// |Aut(E)| for p > 3: 6 at j = 0, 4 at j = 1728, else 2.
int automorphism_count(const Fp2Field& f, const Fp2& j);

/// All supersingular j in F_{p^2}, sorted. Asserts sum 1/|Aut| = (p-1)/24.
std::vector<Fp2> enumerate_supersingular(const Fp2Field& f);

/// Codomain j-invariants of the ell + 1 cyclic ell-isogenies out of `c`
/// (ell in {2, 3}), sorted. Kernels are found by scanning F_{p^2} for roots
/// of the cubic (ell = 2) or of the 3-division polynomial (ell = 3) and the
/// codomain comes from Velu's formulas.
std::vector<Fp2> l_isogeny_neighbors(const Fp2Field& f, const CurveSS& c, long ell);

/// Phi_ell(j1, j2) == 0 in F_{p^2} for the classical modular polynomial, ell in {2, 3}.
bool modular_polynomial_vanishes(const Fp2Field& f, long ell, const Fp2& j1, const Fp2& j2);

struct SSGraph {
  long p = 0;
  long ell = 0;
  std::vector<long> modulus;
  std::vector<Fp2> vertices;
  /// adjacency[i]: indices of the ell + 1 neighbours of vertex i with
  /// multiplicity, sorted.
  std::vector<std::vector<std::size_t>> adjacency;

  std::optional<std::size_t> find(const Fp2& j) const;
  friend bool operator==(const SSGraph&, const SSGraph&) = default;
};

SSGraph build_graph(const Fp2Field& f, long ell);

bool is_connected(const SSGraph& g);

struct IsogenyPath {
  std::vector<Fp2> path;
  std::size_t r = 0;
  Integer degree = 1;

  friend bool operator==(const IsogenyPath&, const IsogenyPath&) = default;
};

/// Shortest path by breadth-first search, visiting neighbours in increasing
/// (c0, c1) order. Throws PreconditionError when an endpoint is not a vertex.
IsogenyPath find_isogeny_path(const SSGraph& g, const Fp2& src, const Fp2& dst);

}  // namespace mukai
