#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mukai/errors.hpp"
#include "mukai/json_io.hpp"

namespace mukai::cli {
namespace {

/// Bad command-line arguments or missing scenario sections.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Format {
  bool json = false;
  bool table = false;
  bool use_table() const { return table && !json; }
};

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Integer parse_integer(const std::string& s) {
  try {
    return json(s).get<Integer>();
  } catch (const ParseError&) {
    throw UsageError("not an integer: \"" + s + "\"");
  }
}

std::vector<Integer> parse_primes(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_integer(part));
  return out;
}

Fp2 parse_j(const Fp2Field& f, const std::string& s) {
  auto parts = split(s, ',');
  if (parts.empty() || parts.size() > 2) throw UsageError("j must be written c0,c1");
  Integer c0 = parse_integer(parts[0]);
  Integer c1 = parts.size() == 2 ? parse_integer(parts[1]) : Integer(0);
  Integer p = f.p();
  return f.make(mod_floor(c0, p).get_si(), mod_floor(c1, p).get_si());
}

SearchOptions options_from_env() {
  SearchOptions opts;
  if (const char* env = std::getenv("MUKAI_SEARCH_BOUND_SCALE")) {
    Integer scale = parse_integer(env);
    if (scale < 1) throw UsageError("MUKAI_SEARCH_BOUND_SCALE must be >= 1");
    opts.bound_scale = scale;
  }
  return opts;
}

std::string render(const Generator& g) {
  json j = generator_to_json(g);
  j.erase("kind");
  return generator_name(g) + (j.empty() ? "" : " " + j.dump());
}

void print_result_table(std::ostream& out, const std::string& variant,
                        const NormalizationResult& r) {
  out << "variant      " << variant << "\n";
  out << "final        " << to_string(r.final_vector()) << "\n";
  out << "dual parity  " << r.dual_parity() << "\n";
  out << "word length  " << r.word().length() << "\n";
  for (const auto& g : r.word().generators()) out << "  " << render(g) << "\n";
  for (const auto& e : r.certificate()) {
    out << (e.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(22) << e.name << " "
        << e.witness.dump() << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const Format& fmt, std::ostream& out) {
  Scenario sc = scenario_from_json(read_document(path));
  json report = json::object();
  bool ok = true;
  auto section = [&](const std::string& name, const ValidationReport& rep) {
    report[name] = rep;
    ok = ok && rep.ok();
  };

  ValidationReport lat = validate_lattice(sc.lattice);
  section("lattice", lat);

  if (sc.word) {
    ValidationReport rep;
    try {
      IsometryWord w = word_from_json(*sc.word, sc.lattice);
      if (!validate_isometry(sc.lattice, w.matrix())) rep.add("word is not an isometry");
    } catch (const std::invalid_argument& e) {
      rep.add(e.what());
    }
    section("word", rep);
  }

  std::optional<LatticeSpec> prod = sc.product_lattice;
  if (sc.hom_lattice) {
    ValidationReport rep = validate_hom_lattice(*sc.hom_lattice);
    section("hom_lattice", rep);
    if (rep.ok() && !prod) {
      try {
        prod = to_lattice_spec(*sc.hom_lattice);
      } catch (const std::invalid_argument& e) {
        ValidationReport r2;
        r2.add(e.what());
        section("product_lattice", r2);
      }
    }
  }
  if (sc.cover) {
    ValidationReport rep;
    if (!prod) {
      rep.add("cover given without a product lattice or Hom lattice");
    } else {
      CoverCheck cc = check_cover(*prod, sc.lattice, *sc.cover);
      if (!cc.shape) rep.add("cover matrix has the wrong shape");
      if (!cc.scaling) rep.add("cover does not scale the intersection form by its degree");
      if (!cc.neron_inclusion) rep.add("exponent^2 NS is not contained in the pulled-back lattice");
      if (!cc.exponent_divides) rep.add("exponent does not divide the degree");
    }
    section("cover", rep);
  }
  if (sc.primes) {
    ValidationReport rep;
    for (const auto& q : *sc.primes) {
      if (!is_prime(q)) rep.add(to_string(q) + " is not prime");
    }
    section("primes", rep);
  }

  if (fmt.use_table()) {
    for (const auto& [name, rep] : report.items()) {
      out << (rep["ok"].get<bool>() ? "[PASS] " : "[FAIL] ") << name << "\n";
      for (const auto& v : rep["violations"]) out << "       " << v.get<std::string>() << "\n";
    }
  } else {
    out << json{{"ok", ok}, {"sections", report}}.dump(2) << "\n";
  }
  return ok ? kOk : kFailed;
}

IsometryWord scenario_word(const Scenario& sc, const std::optional<std::int64_t>& seed) {
  if (seed) return random_isometry(sc.lattice, static_cast<std::uint64_t>(*seed), 8);
  if (sc.word) return word_from_json(*sc.word, sc.lattice);
  if (sc.seed) return random_isometry(sc.lattice, sc.seed->get_ui(), 8);
  return IsometryWord(sc.lattice);
}

int cmd_normalize(const std::string& path, const std::string& variant,
                  const std::string& primes_arg, const std::optional<std::int64_t>& seed,
                  const Format& fmt, std::ostream& out, std::ostream& err) {
  Scenario sc = scenario_from_json(read_document(path));
  SearchOptions opts = options_from_env();
  std::vector<Integer> primes = primes_arg.empty() ? sc.primes.value_or(std::vector<Integer>{})
                                                   : parse_primes(primes_arg);
  IsometryWord phi = scenario_word(sc, seed);

  auto product_spec = [&]() -> LatticeSpec {
    if (sc.product_lattice) return *sc.product_lattice;
    if (sc.hom_lattice) return to_lattice_spec(*sc.hom_lattice);
    throw UsageError("variant needs \"product_lattice\" or \"hom_lattice\"");
  };
  auto require_cover = [&]() -> const CoverDatum& {
    if (!sc.cover) throw UsageError("variant needs a \"cover\" section");
    return *sc.cover;
  };

  std::optional<NormalizationResult> result;
  if (variant == "full") {
    result.emplace(normalize_full(phi, opts));
  } else if (variant == "prime-split") {
    if (primes.size() != 2) throw UsageError("prime-split needs two primes");
    result.emplace(normalize_prime_split(phi, primes[0], primes[1], opts));
  } else if (variant == "pullback") {
    const CoverDatum& cover = require_cover();
    LatticeSpec prod = product_spec();
    Integer p;
    if (!primes.empty()) {
      p = primes.front();
    } else if (sc.hom_lattice) {
      p = sc.hom_lattice->p;
    } else {
      throw UsageError("pullback needs a prime p");
    }
    result.emplace(normalize_pullback(prod, cover, phi, p, opts));
  } else if (variant == "supersingular") {
    const CoverDatum& cover = require_cover();
    if (!sc.hom_lattice) throw UsageError("supersingular needs a \"hom_lattice\" section");
    Integer t = sc.t.value_or(sc.hom_lattice->p == 2 ? 3 : 2);
    result.emplace(normalize_supersingular(*sc.hom_lattice, cover, phi, t, opts));
  } else {
    throw UsageError("unknown variant " + variant);
  }

  if (fmt.use_table()) {
    print_result_table(out, variant, *result);
  } else {
    out << result_to_json(*result).dump(2) << "\n";
  }
  if (!result->passed()) {
    for (const auto& e : result->certificate()) {
      if (!e.pass) err << "certificate entry failed: " << e.name << " " << e.witness.dump() << "\n";
    }
    return kFailed;
  }
  return kOk;
}

int cmd_pair(const std::string& path, const Format& fmt, std::ostream& out, std::ostream& err) {
  Scenario sc = scenario_from_json(read_document(path));
  if (sc.vectors.empty()) throw UsageError("pair needs a non-empty \"vectors\" list");
  ValidationReport lat = validate_lattice(sc.lattice);
  if (!lat.ok()) {
    err << "invalid lattice: " << lat.violations.front() << "\n";
    return kFailed;
  }
  for (const auto& v : sc.vectors) {
    if (v.l.size() != sc.lattice.rank) throw UsageError("vector rank does not match the lattice");
  }
  const std::size_t n = sc.vectors.size();
  auto gram_of = [&](const std::vector<MukaiVector>& vs) {
    std::vector<IntVector> rows(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) rows[i][k] = mukai_pairing(sc.lattice, vs[i], vs[k]);
    return rows;
  };
  auto before = gram_of(sc.vectors);
  json doc{{"pairings", before}};
  bool ok = true;
  if (sc.word) {
    IsometryWord w = word_from_json(*sc.word, sc.lattice);
    std::vector<MukaiVector> images;
    for (const auto& v : sc.vectors) images.push_back(apply(w, v));
    bool preserved = gram_of(images) == before;
    doc["images"] = images;
    doc["preserved"] = preserved;
    ok = preserved;
  }
  if (fmt.use_table()) {
    for (std::size_t i = 0; i < n; ++i) {
      out << std::left << std::setw(28) << to_string(sc.vectors[i]);
      for (std::size_t k = 0; k < n; ++k) out << " " << std::setw(8) << to_string(before[i][k]);
      out << "\n";
    }
    if (doc.contains("preserved")) out << "preserved " << (ok ? "yes" : "no") << "\n";
  } else {
    out << doc.dump(2) << "\n";
  }
  return ok ? kOk : kFailed;
}

void check_graph_args(long p, long ell) {
  if (p <= 3 || !is_prime(p)) throw UsageError("--p must be a prime > 3");
  if (ell != 2 && ell != 3) throw UsageError("--ell must be 2 or 3");
  if (ell == p) throw UsageError("--ell must differ from --p");
}

int cmd_graph(long p, long ell, const Format& fmt, std::ostream& out) {
  check_graph_args(p, ell);
  Fp2Field f(p);
  SSGraph g = build_graph(f, ell);
  if (!is_connected(g)) throw InvariantViolation("graph is not connected");
  if (fmt.use_table()) {
    out << "p " << p << "  ell " << ell << "  vertices " << g.vertices.size() << "\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      out << std::left << std::setw(12) << to_string(g.vertices[i]) << " ->";
      for (std::size_t k : g.adjacency[i]) out << " " << to_string(g.vertices[k]);
      out << "\n";
    }
  } else {
    out << json(g).dump(2) << "\n";
  }
  return kOk;
}

int cmd_path(long p, long ell, const std::string& from, const std::string& to,
             const Format& fmt, std::ostream& out) {
  check_graph_args(p, ell);
  Fp2Field f(p);
  Fp2 src = parse_j(f, from), dst = parse_j(f, to);
  SSGraph g = build_graph(f, ell);
  IsogenyPath path = find_isogeny_path(g, src, dst);
  if (fmt.use_table()) {
    out << "r " << path.r << "  degree " << to_string(path.degree) << "\n";
    for (const auto& j : path.path) out << "  " << to_string(j) << "\n";
  } else {
    out << json(path).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derived-equivalence normalizer for numerical Mukai lattices", "mukai"};
  app.require_subcommand(1);

  Format fmt;
  std::string scenario, variant = "full", primes, from, to;
  std::optional<std::int64_t> seed;
  long p = 0, ell = 0;

  auto add_format = [&](CLI::App* sub) {
    sub->add_flag("--json", fmt.json, "JSON output (default)");
    sub->add_flag("--table", fmt.table, "human-readable output");
  };

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenario, "scenario JSON")->required();
  add_format(validate);

  auto* normalize = app.add_subcommand("normalize", "normalize the scenario word");
  normalize->add_option("scenario", scenario, "scenario JSON")->required();
  normalize->add_option("--variant", variant, "full|prime-split|pullback|supersingular")
      ->check(CLI::IsMember({"full", "prime-split", "pullback", "supersingular"}));
  normalize->add_option("--primes", primes, "comma-separated primes");
  normalize->add_option("--seed", seed, "use a seeded random word instead of the scenario word");
  add_format(normalize);

  auto* pair = app.add_subcommand("pair", "Mukai pairings of the scenario vectors");
  pair->add_option("scenario", scenario, "scenario JSON")->required();
  add_format(pair);

  auto* graph = app.add_subcommand("graph", "supersingular ell-isogeny graph");
  graph->add_option("--p", p, "characteristic")->required();
  graph->add_option("--ell", ell, "isogeny degree (2 or 3)")->required();
  add_format(graph);

  auto* path = app.add_subcommand("path", "shortest isogeny path between two j-invariants");
  path->add_option("--p", p, "characteristic")->required();
  path->add_option("--ell", ell, "isogeny degree (2 or 3)")->required();
  path->add_option("--from", from, "source j as c0,c1")->required();
  path->add_option("--to", to, "target j as c0,c1")->required();
  add_format(path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(scenario, fmt, out);
    if (normalize->parsed()) return cmd_normalize(scenario, variant, primes, seed, fmt, out, err);
    if (pair->parsed()) return cmd_pair(scenario, fmt, out, err);
    if (graph->parsed()) return cmd_graph(p, ell, fmt, out);
    if (path->parsed()) return cmd_path(p, ell, from, to, fmt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const SearchBoundExceeded& e) {
    err << "search bound exceeded: " << e.what() << "\n";
    return kSearchBound;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kFailed;
  }
  return kBadInput;
}

}  // namespace mukai::cli
