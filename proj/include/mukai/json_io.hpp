#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mukai/isogeny_graph.hpp"
#include "mukai/isometry.hpp"
#include "mukai/json_integer.hpp"
#include "mukai/lattice.hpp"
#include "mukai/normalizer.hpp"
#include "mukai/product_ns.hpp"

namespace mukai {

using nlohmann::json;

/// Parses text; throws ParseError with the parser message on malformed input.
json parse_json(const std::string& text);

void to_json(json& j, const IntMatrix& m);
void from_json(const json& j, IntMatrix& m);

void to_json(json& j, const LatticeSpec& s);
void from_json(const json& j, LatticeSpec& s);

void to_json(json& j, const MukaiVector& v);
void from_json(const json& j, MukaiVector& v);

json generator_to_json(const Generator& g);
/// A swap without "sigma" uses -Id of the given rank.
Generator generator_from_json(const json& j, std::size_t rank);

json word_to_json(const IsometryWord& w);
IsometryWord word_from_json(const json& j, const LatticeSpec& spec);

void to_json(json& j, const HomLattice& h);
void from_json(const json& j, HomLattice& h);

void to_json(json& j, const CoverDatum& c);
void from_json(const json& j, CoverDatum& c);

void to_json(json& j, const ProductClass& c);

void to_json(json& j, const ModuliCertificate& c);
void to_json(json& j, const ValidationReport& r);

void to_json(json& j, const CertificateEntry& e);
void to_json(json& j, const SearchStats& s);
json result_to_json(const NormalizationResult& r);

void to_json(json& j, const Fp2& z);
void from_json(const json& j, Fp2& z);

void to_json(json& j, const SSGraph& g);
void from_json(const json& j, SSGraph& g);

void to_json(json& j, const IsogenyPath& p);
void from_json(const json& j, IsogenyPath& p);

/// Input document for the command-line tool.
struct Scenario {
  LatticeSpec lattice;
  std::optional<json> word;  // parsed against `lattice` on demand
  std::optional<HomLattice> hom_lattice;
  std::optional<CoverDatum> cover;
  std::optional<LatticeSpec> product_lattice;
  std::optional<std::vector<Integer>> primes;
  std::optional<Integer> seed;
  std::optional<Integer> t;
  std::vector<MukaiVector> vectors;
};

Scenario scenario_from_json(const json& j);

}  // namespace mukai
