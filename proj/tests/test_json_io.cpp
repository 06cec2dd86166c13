#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mukai/errors.hpp"
#include "mukai/json_io.hpp"
#include "random_lattice.hpp"

using namespace mukai;
using namespace mukai::testing;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace

TEST_CASE("integers beyond 64 bits travel as strings") {
  Integer big("123456789012345678901234567890");
  json j = big;
  CHECK(j.is_string());
  CHECK(j.get<Integer>() == big);
  json small = Integer(-42);
  CHECK(small.is_number_integer());
  CHECK(small.get<Integer>() == -42);
  Integer edge("9223372036854775807");
  CHECK(json(edge).is_number_integer());
  CHECK(json(Integer(edge + 1)).is_string());
  CHECK(json(Integer("-9223372036854775808")).is_number_integer());
  CHECK_THROWS_AS(json("12x").get<Integer>(), ParseError);
  CHECK_THROWS_AS(json(1.5).get<Integer>(), ParseError);
}

TEST_CASE("lattice and vector round trips") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    LatticeSpec spec = random_lattice(rng, static_cast<std::size_t>(uniform(rng, 1, 5)));
    REQUIRE(json(spec).get<LatticeSpec>() == spec);
    MukaiVector v{uniform(rng, -9, 9), random_vector(rng, spec.rank, -9, 9), Integer("-98765432109876543210")};
    REQUIRE(json(v).get<MukaiVector>() == v);
    REQUIRE(parse_json(json(v).dump()).get<MukaiVector>() == v);
  }
}

TEST_CASE("word round trips") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    LatticeSpec spec = random_lattice(rng, static_cast<std::size_t>(uniform(rng, 1, 5)));
    IsometryWord w = random_isometry(spec, rng(), 10);
    std::vector<Generator> gens = w.generators();
    gens.push_back(Custom{w.matrix()});
    IsometryWord with_custom(spec, gens);
    json j = word_to_json(with_custom);
    REQUIRE(word_from_json(parse_json(j.dump()), spec) == with_custom);
  }
  LatticeSpec h = hyperbolic_plane();
  IsometryWord w = word_from_json(parse_json(R"({"generators":[{"kind":"swap"}]})"), h);
  CHECK(w.generators() == std::vector<Generator>{default_swap(2)});
  CHECK_THROWS_AS(word_from_json(parse_json(R"({"generators":[{"kind":"flip"}]})"), h), ParseError);
  CHECK_THROWS_AS(word_from_json(parse_json(R"({"generators":{}})"), h), ParseError);
  CHECK_THROWS_AS(word_from_json(parse_json(R"({"generators":[{"kind":"twist","n":1}]})"), h),
                  ParseError);
}

TEST_CASE("hom lattice and cover round trips") {
  HomLattice q = hom_quaternion(7);
  CHECK(json(q).get<HomLattice>() == q);
  CoverFixture f = dual_cover(q, 3);
  CoverDatum back = json(f.cover).get<CoverDatum>();
  CHECK(back.iota == f.cover.iota);
  CHECK(back.degree == f.cover.degree);
  CHECK(back.exponent == f.cover.exponent);
  CoverDatum no_dim = parse_json(R"({"iota":[[1]],"degree":1,"exponent":1})").get<CoverDatum>();
  CHECK(no_dim.dim == 2);
}

TEST_CASE("graph and path round trips") {
  Fp2Field f(23);
  SSGraph g = build_graph(f, 3);
  json j = g;
  CHECK(parse_json(j.dump()).get<SSGraph>() == g);
  CHECK(j["edges"].size() == g.vertices.size() * 4);
  IsogenyPath p = find_isogeny_path(g, g.vertices.front(), g.vertices.back());
  CHECK(parse_json(json(p).dump()).get<IsogenyPath>() == p);
  CHECK_THROWS_AS(parse_json("[1]").get<Fp2>(), ParseError);
}

TEST_CASE("normalization results serialize completely") {
  LatticeSpec h = hyperbolic_plane();
  auto res = normalize_full(IsometryWord(h, {default_swap(2)}));
  json j = parse_json(result_to_json(res).dump());
  CHECK(j["final"].get<MukaiVector>() == res.final_vector());
  CHECK(word_from_json(j["word"], h) == res.word());
  CHECK(j["dual_parity"] == res.dual_parity());
  CHECK(j["certificate"].size() == res.certificate().size());
  for (const auto& e : j["certificate"]) CHECK(e["pass"] == true);
  CHECK(j["stats"]["d"] == 1);
}

TEST_CASE("scenario parsing") {
  Scenario s = scenario_from_json(load("pullback_rank1.json"));
  CHECK(s.lattice.rank == 3);
  REQUIRE(s.hom_lattice);
  CHECK(s.hom_lattice->p == 5);
  REQUIRE(s.cover);
  CHECK(s.cover->degree == 2);
  REQUIRE(s.primes);
  CHECK(*s.primes == std::vector<Integer>{5});
  CHECK(s.t == Integer(2));
  CHECK(s.seed == Integer(7));
  CHECK_FALSE(s.word);

  Scenario sw = scenario_from_json(load("swap_word.json"));
  REQUIRE(sw.word);
  CHECK(word_from_json(*sw.word, sw.lattice).length() == 1);

  Scenario pv = scenario_from_json(load("pairing.json"));
  CHECK(pv.vectors.size() >= 2);

  CHECK_THROWS_AS(scenario_from_json(parse_json("{}")), ParseError);
  CHECK_THROWS_AS(scenario_from_json(parse_json(R"({"lattice":{"rank":2,"gram":[[0,1],[1]],"ample":[1,1]}})")),
                  ParseError);
}

TEST_CASE("malformed text") {
  std::ifstream in(std::string(FIXTURE_DIR) + "/malformed.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK_THROWS_AS(parse_json(ss.str()), ParseError);
  CHECK_THROWS_AS(parse_json(""), ParseError);
  CHECK_NOTHROW(parse_json("{\"a\": 1}"));
}
