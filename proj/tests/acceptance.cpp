// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <queue>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "mukai/isogeny_graph.hpp"
#include "mukai/isometry.hpp"
#include "mukai/normalizer.hpp"
#include "mukai/product_ns.hpp"
#include "random_lattice.hpp"

using namespace mukai;
using namespace mukai::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct WordCase {
  LatticeSpec spec;
  IsometryWord word;
};

// The shared pool of 500 seeded words over lattices of rank 1..6.
const std::vector<WordCase>& word_pool() {
  static const std::vector<WordCase> pool = [] {
    std::vector<WordCase> out;
    std::mt19937_64 rng(20240501);
    for (int i = 0; i < 500; ++i) {
      auto rank = static_cast<std::size_t>(i % 6 + 1);
      LatticeSpec spec = random_lattice(rng, rank);
      auto len = static_cast<std::size_t>(uniform(rng, 0, 12));
      out.push_back({spec, random_isometry(spec, rng(), len)});
    }
    return out;
  }();
  return pool;
}

Outcome isometry_suite() {
  Outcome o;
  std::mt19937_64 rng(1);
  for (const auto& [spec, w] : word_pool()) {
    o.require(w.length() <= 12, "word too long");
    o.require(validate_isometry(spec, w.matrix()), "validate_isometry rejected a word");
    for (int k = 0; k < 4; ++k) {
      MukaiVector a{uniform(rng, -20, 20), random_vector(rng, spec.rank, -20, 20), uniform(rng, -20, 20)};
      MukaiVector b{uniform(rng, -20, 20), random_vector(rng, spec.rank, -20, 20), uniform(rng, -20, 20)};
      o.require(mukai_pairing(spec, apply(w, a), apply(w, b)) == mukai_pairing(spec, a, b),
                "pairing not preserved");
    }
  }
  return o;
}

Outcome twist_oracle() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    LatticeSpec spec = random_lattice(rng, static_cast<std::size_t>(uniform(rng, 1, 6)));
    MukaiVector v{uniform(rng, -50, 50), random_vector(rng, spec.rank, -50, 50), uniform(rng, -50, 50)};
    IntVector b = random_vector(rng, spec.rank, -9, 9);
    Integer n = uniform(rng, -9, 9);
    IntVector l = v.l;
    for (std::size_t k = 0; k < l.size(); ++k) l[k] += v.r * n * b[k];
    Integer chi = v.chi + n * spec.dot(v.l, b) + v.r * n * n * (spec.dot(b, b) / 2);
    MukaiVector direct{v.r, l, chi};
    IntVector coords = generator_matrix(spec, Twist{b, n}).apply(v.coordinates());
    o.require(MukaiVector::from_coordinates(coords) == direct, "twist matrix disagrees with the formula");
  }
  return o;
}

Integer entry_int(const NormalizationResult& r, const std::string& name, const std::string& key) {
  const CertificateEntry* e = r.entry(name);
  if (!e || !e->witness.contains(key)) return -1;
  return e->witness.at(key).get<Integer>();
}

std::vector<NormalizationResult>& full_results() {
  static std::vector<NormalizationResult> results;
  return results;
}

Outcome full_normalization() {
  Outcome o;
  for (const auto& [spec, w] : word_pool()) {
    NormalizationResult res = normalize_full(w);
    const MukaiVector& v = res.final_vector();
    ModuliCertificate c = moduli_ready(spec, v);
    o.require(res.passed(), "certificate entry failed");
    o.require(v.r > 0 && c.ample && gcd(v.r, v.chi) == 1 && is_isotropic(spec, v), "final vector not moduli-ready");
    o.require(apply(res.word(), MukaiVector::point(spec.rank)) == v, "word does not reach the final vector");
    o.require(res.word().length() <= 40, "normalized word longer than 40");
    Integer n = entry_int(res, "coprime_search", "n");
    Integer nb = entry_int(res, "coprime_search", "bound");
    Integer d = entry_int(res, "ample_search", "d");
    Integer db = entry_int(res, "ample_search", "bound");
    o.require(n >= 0 && n <= nb && n <= 2 * v.r * v.r + 1, "coprime witness out of bounds");
    o.require(d >= 0 && d <= db, "ample witness out of bounds");
    full_results().push_back(std::move(res));
  }
  return o;
}

Outcome prime_split() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (auto [p1, p2] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {3, 5}}) {
    for (int i = 0; i < 100; ++i) {
      LatticeSpec spec = random_lattice(rng, static_cast<std::size_t>(uniform(rng, 1, 6)));
      IsometryWord w = random_isometry(spec, rng(), static_cast<std::size_t>(uniform(rng, 0, 12)));
      NormalizationResult res = normalize_prime_split(w, p1, p2);
      const MukaiVector& v = res.final_vector();
      bool disjunction = (v.r % p1 != 0 && v.r % p2 != 0) || (v.r % p1 != 0 && v.chi % p2 != 0) ||
                         (v.chi % p1 != 0 && v.r % p2 != 0) || (v.chi % p1 != 0 && v.chi % p2 != 0);
      o.require(disjunction, "prime split postcondition failed");
      o.require(res.passed(), "prime split certificate failed");
      o.require(apply(res.word(), MukaiVector::point(spec.rank)) == v, "word does not reach the final vector");
      o.require(is_isotropic(spec, v), "isotropy lost");
    }
  }
  return o;
}

Outcome pullback_suite() {
  Outcome o;
  struct Case {
    HomLattice hl;
    long t;
  };
  std::vector<Case> homs{{hom_rank1(2, 5), 2}, {hom_rank1(3, 5), 3}, {hom_quaternion(7), 2},
                         {hom_quaternion(11), 2}};
  std::mt19937_64 rng(5);
  for (const auto& c : homs) {
    std::vector<CoverFixture> covers{identity_cover(to_lattice_spec(c.hl))};
    for (long d : {2L, 3L}) {
      covers.push_back(cyclic_cover(c.hl, d));
      covers.push_back(dual_cover(c.hl, d));
    }
    for (const auto& f : covers) {
      for (int i = 0; i < 12; ++i) {
        IsometryWord w = random_isometry(f.target, rng(), static_cast<std::size_t>(uniform(rng, 0, 12)));
        NormalizationResult pb = normalize_pullback(f.product, f.cover, w, c.hl.p);
        o.require(pb.passed(), "pullback certificate failed");
        o.require(pullback_preimage(f.cover, pb.final_vector().l).has_value(), "l not in image(iota)");
        NormalizationResult ss = normalize_supersingular(c.hl, f.cover, w, c.t);
        o.require(ss.passed(), "supersingular certificate failed");
        auto x = pullback_preimage(f.cover, ss.final_vector().l);
        o.require(x.has_value(), "l not in image(iota)");
        if (x) o.require(is_separable(c.hl, ProductClass::from_coordinates(*x).phi), "final phi inseparable");
      }
    }
  }
  return o;
}

Outcome product_oracle() {
  Outcome o;
  for (long deg : {1L, 2L, 3L}) {
    HomLattice hl = hom_rank1(deg, 5);
    std::vector<ProductClass> all;
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b)
        for (long f = -3; f <= 3; ++f) all.push_back(ProductClass{a, b, make_vector({f})});
    for (const auto& x : all)
      for (const auto& y : all)
        o.require(product_pairing(hl, x, y) == basis_expansion_pairing(hl, x, y), "pairing disagrees with oracle");
  }
  return o;
}

Outcome neron_consistency() {
  Outcome o;
  std::vector<LatticeSpec> specs{hyperbolic_plane(), to_lattice_spec(hom_rank1(2, 5)),
                                 to_lattice_spec(hom_quaternion(7))};
  for (const auto& s : specs) {
    IntMatrix id = IntMatrix::identity(s.rank);
    for (long e = 1; e <= 3; ++e) {
      Integer e2 = e * e;
      o.require(validate_cover(s, s, CoverDatum{e2 * id, e2 * e2, e}), "multiplication by e rejected");
      o.require(!validate_cover(s, s, CoverDatum{2 * e2 * id, e2 * e2, e}), "2e^2 Id accepted");
    }
  }
  return o;
}

Outcome isogeny_graphs() {
  Outcome o;
  for (long p : {11L, 13L, 17L, 19L, 23L, 31L, 37L, 41L, 43L, 47L}) {
    Fp2Field f(p);
    for (long ell : {2L, 3L}) {
      SSGraph g = build_graph(f, ell);
      const std::size_t n = g.vertices.size();
      mpq_class mass = 0;
      for (const Fp2& j : g.vertices) mass += mpq_class(1, automorphism_count(f, j));
      mass.canonicalize();
      mpq_class expected(p - 1, 24);
      expected.canonicalize();
      o.require(mass == expected, "mass formula fails at p=" + std::to_string(p));
      for (const auto& adj : g.adjacency)
        o.require(adj.size() == static_cast<std::size_t>(ell + 1), "graph not regular");
      o.require(is_connected(g), "graph not connected");
      for (std::size_t s = 0; s < n; ++s) {
        // Independent BFS layering from s.
        std::vector<long> layer(n, -1);
        std::queue<std::size_t> q;
        layer[s] = 0;
        q.push(s);
        while (!q.empty()) {
          std::size_t u = q.front();
          q.pop();
          for (std::size_t v : g.adjacency[u])
            if (layer[v] < 0) {
              layer[v] = layer[u] + 1;
              q.push(v);
            }
        }
        for (std::size_t t = 0; t < n; ++t) {
          o.require(layer[t] >= 0, "unreachable vertex");
          IsogenyPath path = find_isogeny_path(g, g.vertices[s], g.vertices[t]);
          o.require(static_cast<long>(path.r) == layer[t], "path not minimal");
          for (std::size_t k = 0; k < path.path.size(); ++k) {
            auto idx = g.find(path.path[k]);
            o.require(idx && layer[*idx] == static_cast<long>(k), "path leaves its BFS layer");
          }
        }
      }
    }
  }
  return o;
}

Outcome complementary() {
  Outcome o;
  o.require(complementary_degree(2, 2, 8) == 2, "(2,2,8) != 2");
  o.require(complementary_degree(3, 2, 27) == 3, "(3,2,27) != 3");
  return o;
}

Outcome filtered() {
  Outcome o;
  o.require(full_results().size() == word_pool().size(), "normalization runs missing");
  for (const auto& res : full_results()) {
    o.require(is_filtered(compose(inverse(res.word()), res.word())), "w^-1 w not filtered");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"isometry suite", 5, isometry_suite},
      {"twist formula oracle", 1, twist_oracle},
      {"full normalization", 30, full_normalization},
      {"prime split", 30, prime_split},
      {"pullback and supersingular fixtures", 30, pullback_suite},
      {"product pairing oracle", 5, product_oracle},
      {"multiplication-by-e cover", 0, neron_consistency},
      {"isogeny graphs", 60, isogeny_graphs},
      {"complementary degree", 0, complementary},
      {"filtered predicate", 0, filtered},
  };
  // Build the shared word pool outside any timed criterion.
  word_pool();
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit > 0 && secs >= c.limit) {
      o.ok = false;
      o.detail = "time limit exceeded";
    }
    std::printf("%s %2d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", index, c.name, secs,
                o.ok ? "" : ": ", o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
