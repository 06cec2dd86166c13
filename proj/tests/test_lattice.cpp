#include <random>

#include "doctest.h"
#include "mukai/errors.hpp"
#include "mukai/lattice.hpp"
#include "random_lattice.hpp"

using namespace mukai;
using mukai::testing::random_lattice;
using mukai::testing::random_vector;
using mukai::testing::uniform;

namespace {

MukaiVector mv(long r, std::initializer_list<long> l, long chi) {
  return MukaiVector{r, make_vector(l), chi};
}

bool mentions(const ValidationReport& rep, const std::string& needle) {
  for (const auto& v : rep.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

MukaiVector random_mukai(std::mt19937_64& rng, std::size_t rank) {
  return MukaiVector{uniform(rng, -9, 9), random_vector(rng, rank, -9, 9), uniform(rng, -9, 9)};
}

}  // namespace

TEST_CASE("lattice validation") {
  CHECK(validate_lattice(hyperbolic_plane()).ok());
  CHECK(validate_lattice(LatticeSpec{1, IntMatrix{{2}}, make_vector({1})}).ok());

  auto odd = validate_lattice(LatticeSpec{2, IntMatrix{{1, 0}, {0, -1}}, make_vector({1, 0})});
  CHECK_FALSE(odd.ok());
  CHECK(mentions(odd, "odd diagonal"));

  auto asym = validate_lattice(LatticeSpec{2, IntMatrix{{0, 1}, {2, 0}}, make_vector({1, 1})});
  CHECK(mentions(asym, "not symmetric"));

  auto negdef = validate_lattice(LatticeSpec{2, IntMatrix{{-2, 0}, {0, -2}}, make_vector({1, 0})});
  CHECK(mentions(negdef, "signature"));

  auto posdef = validate_lattice(LatticeSpec{2, IntMatrix{{2, 0}, {0, 2}}, make_vector({1, 0})});
  CHECK(mentions(posdef, "signature"));

  auto degenerate = validate_lattice(LatticeSpec{2, IntMatrix{{2, 0}, {0, 0}}, make_vector({1, 0})});
  CHECK(mentions(degenerate, "signature"));

  auto bad_h = validate_lattice(LatticeSpec{2, IntMatrix{{0, 1}, {1, 0}}, make_vector({1, 0})});
  CHECK(mentions(bad_h, "non-positive square"));

  auto shape = validate_lattice(LatticeSpec{3, IntMatrix{{0, 1}, {1, 0}}, make_vector({1, 1})});
  CHECK_FALSE(shape.ok());
  CHECK_FALSE(validate_lattice(LatticeSpec{0, IntMatrix(), IntVector{}}).ok());
}

TEST_CASE("Mukai pairing examples") {
  LatticeSpec h = hyperbolic_plane();
  CHECK(mukai_pairing(h, MukaiVector::point(2), MukaiVector::unit(2)) == -1);
  CHECK(mukai_pairing(h, MukaiVector::unit(2), MukaiVector::unit(2)) == 0);
  CHECK(mukai_pairing(h, mv(1, {1, 1}, 1), mv(1, {1, 1}, 1)) == 0);
  CHECK_THROWS_AS(mukai_pairing(h, mv(1, {1}, 1), MukaiVector::unit(2)), DimensionError);
}

TEST_CASE("isotropy examples") {
  LatticeSpec h = hyperbolic_plane();
  CHECK(is_isotropic(h, MukaiVector::point(2)));
  CHECK(is_isotropic(h, mv(2, {1, 8}, 4)));
  CHECK_FALSE(is_isotropic(h, mv(1, {1, 1}, 0)));
}

TEST_CASE("ampleness examples") {
  LatticeSpec h = hyperbolic_plane();
  CHECK(is_ample(h, make_vector({1, 1})));
  CHECK_FALSE(is_ample(h, make_vector({1, 0})));
  CHECK_FALSE(is_ample(h, make_vector({-1, -1})));
  CHECK_THROWS_AS(is_ample(h, make_vector({1})), DimensionError);
}

TEST_CASE("moduli-ready certificate") {
  LatticeSpec h = hyperbolic_plane();
  auto good = moduli_ready(h, mv(1, {1, 1}, 1));
  CHECK(good.positive_rank);
  CHECK(good.ample);
  CHECK(good.coprime);
  CHECK(good.isotropic);
  CHECK(good.pass());

  auto point = moduli_ready(h, MukaiVector::point(2));
  CHECK_FALSE(point.positive_rank);
  CHECK_FALSE(point.pass());

  auto shared = moduli_ready(h, mv(2, {1, 8}, 4));
  CHECK(shared.isotropic);
  CHECK_FALSE(shared.coprime);
  CHECK(shared.gcd_r_chi == 2);
  CHECK_FALSE(shared.pass());
}

TEST_CASE("Mukai vector coordinates round trip") {
  MukaiVector v = mv(3, {4, -5}, 6);
  CHECK(v.coordinates() == make_vector({3, 4, -5, 6}));
  CHECK(MukaiVector::from_coordinates(v.coordinates()) == v);
  CHECK(to_string(v) == "(3,(4,-5),6)");
  CHECK(extended_gram(hyperbolic_plane()) ==
        IntMatrix{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});
}

TEST_CASE("random lattices are valid and even") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    auto rank = static_cast<std::size_t>(uniform(rng, 1, 6));
    LatticeSpec spec = random_lattice(rng, rank);
    REQUIRE(validate_lattice(spec).ok());
    IntVector x = random_vector(rng, rank, -20, 20);
    REQUIRE(spec.dot(x, x) % 2 == 0);
  }
}

TEST_CASE("pairing is symmetric and bilinear") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    auto rank = static_cast<std::size_t>(uniform(rng, 1, 6));
    LatticeSpec spec = random_lattice(rng, rank);
    MukaiVector u = random_mukai(rng, rank), v = random_mukai(rng, rank), w = random_mukai(rng, rank);
    long a = uniform(rng, -5, 5), b = uniform(rng, -5, 5);
    IntVector cu = u.coordinates(), cv = v.coordinates(), comb(cu.size());
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * cu[i] + b * cv[i];
    MukaiVector lin = MukaiVector::from_coordinates(comb);
    REQUIRE(mukai_pairing(spec, u, w) == mukai_pairing(spec, w, u));
    REQUIRE(mukai_pairing(spec, lin, w) ==
            a * mukai_pairing(spec, u, w) + b * mukai_pairing(spec, v, w));
    // Matrix form agrees with the closed formula.
    REQUIRE(bilinear(extended_gram(spec), u.coordinates(), w.coordinates()) ==
            mukai_pairing(spec, u, w));
  }
}

TEST_CASE("ample cone is convex") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 300; ++trial) {
    auto rank = static_cast<std::size_t>(uniform(rng, 1, 6));
    LatticeSpec spec = random_lattice(rng, rank);
    IntVector l = random_vector(rng, rank, -6, 6), m = random_vector(rng, rank, -6, 6);
    if (!is_ample(spec, l) || !is_ample(spec, m)) continue;
    IntVector sum(rank);
    for (std::size_t i = 0; i < rank; ++i) sum[i] = l[i] + m[i];
    REQUIRE(is_ample(spec, sum));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("certificate pass implies the numerical hypotheses") {
  std::mt19937_64 rng(4);
  LatticeSpec h = hyperbolic_plane();
  for (int trial = 0; trial < 2000; ++trial) {
    MukaiVector v = random_mukai(rng, 2);
    auto c = moduli_ready(h, v);
    if (!c.pass()) continue;
    REQUIRE(v.r > 0);
    REQUIRE(gcd(v.r, v.chi) == 1);
    REQUIRE(mukai_pairing(h, v, v) == 0);
    REQUIRE(is_ample(h, v.l));
  }
}
