#include "fixtures.hpp"

namespace mukai::testing {

HomLattice hom_rank1(long deg, long p, long tau) {
  HomLattice hl;
  hl.rank = 1;
  hl.deg_gram = IntMatrix{{2 * deg}};
  hl.p = p;
  hl.tau = IntMatrix{{tau}};
  return hl;
}

HomLattice hom_quaternion(long p) {
  const long h = (1 + p) / 2;
  HomLattice hl;
  hl.rank = 4;
  hl.deg_gram = IntMatrix{{2, 0, 1, 0}, {0, 2, 0, 1}, {1, 0, h, 0}, {0, 1, 0, h}};
  hl.p = p;
  hl.tau = IntMatrix{{1, 0, h % p, 0}, {0, 1, 0, h % p}};
  return hl;
}

CoverFixture identity_cover(const LatticeSpec& spec) {
  CoverFixture f;
  f.product = spec;
  f.target = spec;
  f.cover.iota = IntMatrix::identity(spec.rank);
  return f;
}

namespace {

LatticeSpec scaled_target(const HomLattice& hl, long d) {
  LatticeSpec s;
  s.rank = 2 + hl.rank;
  s.gram = IntMatrix(s.rank, s.rank);
  s.gram(0, 1) = 1;
  s.gram(1, 0) = 1;
  s.gram.set_block(2, 2, Integer(-d) * hl.deg_gram);
  s.ample = IntVector(s.rank, 0);
  s.ample[0] = 1;
  s.ample[1] = 1;
  return s;
}

}  // namespace

CoverFixture cyclic_cover(const HomLattice& hl, long d) {
  CoverFixture f;
  f.product = to_lattice_spec(hl);
  f.target = scaled_target(hl, d);
  IntVector diag(2 + hl.rank, 1);
  diag[1] = d;
  f.cover.iota = IntMatrix::diagonal(diag);
  f.cover.degree = d;
  f.cover.exponent = d;
  return f;
}

CoverFixture dual_cover(const HomLattice& hl, long d) {
  CoverFixture f;
  f.product = to_lattice_spec(hl);
  f.target = scaled_target(hl, d);
  IntVector diag(2 + hl.rank, d);
  diag[1] = d * d;
  f.cover.iota = IntMatrix::diagonal(diag);
  f.cover.degree = d * d * d;
  f.cover.exponent = d;
  return f;
}

}  // namespace mukai::testing

namespace mukai::testing {

Integer basis_expansion_pairing(const HomLattice& hl, const ProductClass& x, const ProductClass& y) {
  IntVector diff(x.phi.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = x.phi[i] - y.phi[i];
  const Integer deg_x = degree(hl, x.phi), deg_y = degree(hl, y.phi);
  // gamma_x . gamma_y = deg(x - y), gamma . u = 1, gamma_phi . v = deg phi,
  // u . v = 1, u^2 = v^2 = 0.
  const Integer gg = degree(hl, diff);
  const Integer xv = x.a - 1, xu = x.b - deg_x;
  const Integer yv = y.a - 1, yu = y.b - deg_y;
  return gg + yv * deg_x + yu + xv * deg_y + xv * yu + xu + xu * yv;
}

}  // namespace mukai::testing
