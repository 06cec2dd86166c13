#include "mukai/json_io.hpp"

#include "mukai/errors.hpp"

namespace mukai {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

IntVector int_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  IntVector out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(x.get<Integer>());
  return out;
}

std::size_t size_value(const json& j, const char* what) {
  Integer v = j.get<Integer>();
  if (v < 0 || !v.fits_slong_p()) throw ParseError(std::string(what) + " out of range");
  return static_cast<std::size_t>(v.get_si());
}

long long_value(const json& j, const char* what) {
  Integer v = j.get<Integer>();
  if (!v.fits_slong_p()) throw ParseError(std::string(what) + " out of range");
  return v.get_si();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

void to_json(json& j, const IntMatrix& m) {
  j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(json(m.row(i)));
}

void from_json(const json& j, IntMatrix& m) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto& row : j) rows.push_back(int_vector(row, "matrix row"));
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ParseError("ragged matrix");
  }
  m = IntMatrix::from_rows(rows);
}

void to_json(json& j, const LatticeSpec& s) {
  j = json{{"rank", s.rank}, {"gram", s.gram}, {"ample", s.ample}};
}

void from_json(const json& j, LatticeSpec& s) {
  s.rank = size_value(field(j, "rank"), "rank");
  s.gram = field(j, "gram").get<IntMatrix>();
  s.ample = int_vector(field(j, "ample"), "ample");
}

void to_json(json& j, const MukaiVector& v) { j = json{{"r", v.r}, {"l", v.l}, {"chi", v.chi}}; }

void from_json(const json& j, MukaiVector& v) {
  v.r = field(j, "r").get<Integer>();
  v.l = int_vector(field(j, "l"), "l");
  v.chi = field(j, "chi").get<Integer>();
}

json generator_to_json(const Generator& g) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Shift>) {
          return {{"kind", "shift"}};
        } else if constexpr (std::is_same_v<T, Twist>) {
          return {{"kind", "twist"}, {"b", x.b}, {"n", x.n}};
        } else if constexpr (std::is_same_v<T, MukaiSwap>) {
          return {{"kind", "swap"}, {"sigma", x.sigma}};
        } else {
          return {{"kind", "custom"}, {"m", x.m}};
        }
      },
      g);
}

Generator generator_from_json(const json& j, std::size_t rank) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "shift") return Shift{};
  if (kind == "twist") {
    return Twist{int_vector(field(j, "b"), "b"), field(j, "n").get<Integer>()};
  }
  if (kind == "swap") {
    if (j.contains("sigma")) return MukaiSwap{j.at("sigma").get<IntMatrix>()};
    return default_swap(rank);
  }
  if (kind == "custom") return Custom{field(j, "m").get<IntMatrix>()};
  throw ParseError("unknown generator kind \"" + kind + "\"");
}

json word_to_json(const IsometryWord& w) {
  json gens = json::array();
  for (const auto& g : w.generators()) gens.push_back(generator_to_json(g));
  return {{"generators", gens}};
}

IsometryWord word_from_json(const json& j, const LatticeSpec& spec) {
  const json& gens = field(j, "generators");
  if (!gens.is_array()) throw ParseError("generators must be an array");
  std::vector<Generator> out;
  for (const auto& g : gens) out.push_back(generator_from_json(g, spec.rank));
  return IsometryWord(spec, std::move(out));
}

void to_json(json& j, const HomLattice& h) {
  j = json{{"rank", h.rank}, {"deg_gram", h.deg_gram}, {"p", h.p}, {"tau", h.tau}};
}

void from_json(const json& j, HomLattice& h) {
  h.rank = size_value(field(j, "rank"), "rank");
  h.deg_gram = field(j, "deg_gram").get<IntMatrix>();
  h.p = long_value(field(j, "p"), "p");
  h.tau = j.contains("tau") ? j.at("tau").get<IntMatrix>() : IntMatrix();
}

void to_json(json& j, const CoverDatum& c) {
  j = json{{"iota", c.iota}, {"degree", c.degree}, {"exponent", c.exponent}, {"dim", c.dim}};
}

void from_json(const json& j, CoverDatum& c) {
  c.iota = field(j, "iota").get<IntMatrix>();
  c.degree = field(j, "degree").get<Integer>();
  c.exponent = field(j, "exponent").get<Integer>();
  c.dim = j.contains("dim") ? static_cast<int>(long_value(j.at("dim"), "dim")) : 2;
}

void to_json(json& j, const ProductClass& c) {
  j = json{{"a", c.a}, {"b", c.b}, {"phi", c.phi}};
}

void to_json(json& j, const ModuliCertificate& c) {
  j = json{{"positive_rank", c.positive_rank}, {"ample", c.ample},
           {"coprime", c.coprime},             {"isotropic", c.isotropic},
           {"l_square", c.l_square},           {"l_dot_h", c.l_dot_h},
           {"gcd_r_chi", c.gcd_r_chi},         {"self_pairing", c.self_pairing}};
}

void to_json(json& j, const ValidationReport& r) {
  j = json{{"ok", r.ok()}, {"violations", r.violations}};
}

void to_json(json& j, const CertificateEntry& e) {
  j = json{{"name", e.name}, {"pass", e.pass}, {"witness", e.witness}};
}

void to_json(json& j, const SearchStats& s) {
  j = json{{"n", s.n}, {"d", s.d}, {"m", s.m}, {"loops", s.loops}, {"branch", s.branch}};
}

json result_to_json(const NormalizationResult& r) {
  return {{"word", word_to_json(r.word())},
          {"final", r.final_vector()},
          {"dual_parity", r.dual_parity()},
          {"certificate", r.certificate()},
          {"stats", r.stats()}};
}

void to_json(json& j, const Fp2& z) { j = json::array({z.c0, z.c1}); }

void from_json(const json& j, Fp2& z) {
  if (!j.is_array() || j.size() != 2) throw ParseError("field element must be [c0, c1]");
  z.c0 = j[0].get<std::int64_t>();
  z.c1 = j[1].get<std::int64_t>();
}

void to_json(json& j, const SSGraph& g) {
  json edges = json::array();
  for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
    for (std::size_t k : g.adjacency[i]) edges.push_back(json::array({i, k}));
  }
  j = json{{"p", g.p},
           {"ell", g.ell},
           {"modulus", g.modulus},
           {"vertices", g.vertices},
           {"edges", edges}};
}

void from_json(const json& j, SSGraph& g) {
  g.p = long_value(field(j, "p"), "p");
  g.ell = long_value(field(j, "ell"), "ell");
  g.modulus = field(j, "modulus").get<std::vector<long>>();
  g.vertices = field(j, "vertices").get<std::vector<Fp2>>();
  g.adjacency.assign(g.vertices.size(), {});
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [src, dst]");
    auto s = e[0].get<std::size_t>(), d = e[1].get<std::size_t>();
    if (s >= g.vertices.size() || d >= g.vertices.size()) throw ParseError("edge out of range");
    g.adjacency[s].push_back(d);
  }
}

void to_json(json& j, const IsogenyPath& p) {
  j = json{{"path", p.path}, {"r", p.r}, {"degree", p.degree}};
}

void from_json(const json& j, IsogenyPath& p) {
  p.path = field(j, "path").get<std::vector<Fp2>>();
  p.r = field(j, "r").get<std::size_t>();
  p.degree = field(j, "degree").get<Integer>();
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.lattice = field(j, "lattice").get<LatticeSpec>();
  if (j.contains("word")) s.word = j.at("word");
  if (j.contains("hom_lattice")) s.hom_lattice = j.at("hom_lattice").get<HomLattice>();
  if (j.contains("cover")) s.cover = j.at("cover").get<CoverDatum>();
  if (j.contains("product_lattice")) s.product_lattice = j.at("product_lattice").get<LatticeSpec>();
  if (j.contains("primes")) s.primes = int_vector(j.at("primes"), "primes");
  if (j.contains("seed")) s.seed = j.at("seed").get<Integer>();
  if (j.contains("t")) s.t = j.at("t").get<Integer>();
  if (j.contains("vectors")) {
    for (const auto& v : j.at("vectors")) s.vectors.push_back(v.get<MukaiVector>());
  }
  return s;
}

}  // namespace mukai
