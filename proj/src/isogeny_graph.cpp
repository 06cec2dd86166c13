#include "mukai/isogeny_graph.hpp"

#include <algorithm>
#include <deque>

#include "mukai/errors.hpp"

namespace mukai {
namespace {

void require_large_char(const Fp2Field& f) {
  if (f.p() <= 3) throw PreconditionError("characteristic must exceed 3");
}

Fp2 j1728(const Fp2Field& f) { return f.make(1728); }

/// Coefficients of x^(p-1) in (x^3 + a x + b)^m, m = (p-1)/2, as multinomials
/// m! / (i! j! k!) over terms x^(3i) (a x)^j b^k with j = 2m - 3i, k = 2i - m.
class HasseSieve {
 public:
  explicit HasseSieve(const Fp2Field& f) : f_(f), m_((f.p() - 1) / 2) {
    const long p = f.p();
    std::vector<std::int64_t> fact(static_cast<std::size_t>(m_ + 1), 1), inv_fact(fact.size(), 1);
    for (long k = 1; k <= m_; ++k) fact[k] = fact[k - 1] * k % p;
    for (long k = 0; k <= m_; ++k) {
      inv_fact[k] = mod_inverse(Integer(static_cast<long>(fact[k])), Integer(p)).get_si();
    }
    lo_ = (m_ + 1) / 2;
    hi_ = (2 * m_) / 3;
    for (long i = lo_; i <= hi_; ++i) {
      long j = 2 * m_ - 3 * i, k = 2 * i - m_;
      std::int64_t c = fact[m_] * inv_fact[i] % p * inv_fact[j] % p * inv_fact[k] % p;
      coef_.push_back(c);
    }
  }

  Fp2 evaluate(const Fp2& a, const Fp2& b) const {
    if (lo_ > hi_) return Fp2{};
    const std::size_t n = static_cast<std::size_t>(hi_ - lo_ + 1);
    std::vector<Fp2> apow(n), bpow(n);
    const Fp2 a3 = f_.mul(f_.mul(a, a), a);
    const Fp2 b2 = f_.mul(b, b);
    apow[n - 1] = f_.pow(a, static_cast<std::uint64_t>(2 * m_ - 3 * hi_));
    for (std::size_t t = n - 1; t > 0; --t) apow[t - 1] = f_.mul(apow[t], a3);
    bpow[0] = f_.pow(b, static_cast<std::uint64_t>(2 * lo_ - m_));
    for (std::size_t t = 1; t < n; ++t) bpow[t] = f_.mul(bpow[t - 1], b2);
    Fp2 sum{};
    for (std::size_t t = 0; t < n; ++t) {
      sum = f_.add(sum, f_.scale(f_.mul(apow[t], bpow[t]), coef_[t]));
    }
    return sum;
  }

 private:
  const Fp2Field& f_;
  long m_;
  long lo_ = 0, hi_ = -1;
  std::vector<std::int64_t> coef_;
};

struct Term {
  int i;
  int j;
  const char* coef;
};

const std::vector<Term>& modular_terms(long ell) {
  static const std::vector<Term> phi2 = {
      {3, 0, "1"},          {0, 3, "1"},          {2, 2, "-1"},
      {2, 1, "1488"},       {1, 2, "1488"},       {2, 0, "-162000"},
      {0, 2, "-162000"},    {1, 1, "40773375"},   {1, 0, "8748000000"},
      {0, 1, "8748000000"}, {0, 0, "-157464000000000"}};
  static const std::vector<Term> phi3 = {
      {4, 0, "1"},
      {0, 4, "1"},
      {3, 3, "-1"},
      {3, 2, "2232"},
      {2, 3, "2232"},
      {3, 1, "-1069956"},
      {1, 3, "-1069956"},
      {3, 0, "36864000"},
      {0, 3, "36864000"},
      {2, 2, "2587918086"},
      {2, 1, "8900222976000"},
      {1, 2, "8900222976000"},
      {2, 0, "452984832000000"},
      {0, 2, "452984832000000"},
      {1, 1, "-770845966336000000"},
      {1, 0, "1855425871872000000000"},
      {0, 1, "1855425871872000000000"}};
  if (ell == 2) return phi2;
  if (ell == 3) return phi3;
  throw PreconditionError("modular polynomial available for ell in {2, 3} only");
}

Fp2 velu_codomain(const Fp2Field& f, const CurveSS& c, const Fp2& v, const Fp2& w) {
  Fp2 A = f.sub(c.a, f.scale(v, 5));
  Fp2 B = f.sub(c.b, f.scale(w, 7));
  return j_invariant(f, A, B);
}

}  // namespace

Fp2 j_invariant(const Fp2Field& f, const Fp2& a, const Fp2& b) {
  Fp2 a3 = f.scale(f.mul(f.mul(a, a), a), 4);
  Fp2 den = f.add(a3, f.scale(f.mul(b, b), 27));
  if (f.is_zero(den)) throw PreconditionError("singular curve");
  return f.div(f.scale(a3, 1728), den);
}

CurveSS curve_from_j(const Fp2Field& f, const Fp2& j) {
  require_large_char(f);
  if (!f.contains(j)) throw PreconditionError("j " + to_string(j) + " is not a reduced element");
  CurveSS c;
  if (f.is_zero(j)) {
    c.a = Fp2{0, 0};
    c.b = Fp2{1, 0};
  } else if (j == j1728(f)) {
    c.a = Fp2{1, 0};
    c.b = Fp2{0, 0};
  } else {
    Fp2 k = f.sub(j1728(f), j);
    c.a = f.scale(f.mul(j, k), 3);
    c.b = f.scale(f.mul(j, f.mul(k, k)), 2);
  }
  c.j = j_invariant(f, c.a, c.b);
  if (c.j != j) throw InvariantViolation("curve model has the wrong j-invariant");
  return c;
}

long frobenius_trace(const Fp2Field& f, const CurveSS& c) {
  long sum = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Fp2 x = f.element(k);
    Fp2 y2 = f.add(f.mul(f.add(f.mul(x, x), c.a), x), c.b);
    sum += f.chi(y2);
  }
  return -sum;
}

bool is_supersingular(const Fp2Field& f, const Fp2& j) {
  CurveSS c = curve_from_j(f, j);
  return frobenius_trace(f, c) % f.p() == 0;
}

Fp2 hasse_invariant(const Fp2Field& f, const CurveSS& c) {
  require_large_char(f);
  return HasseSieve(f).evaluate(c.a, c.b);
}

int automorphism_count(const Fp2Field& f, const Fp2& j) {
  require_large_char(f);
  if (f.is_zero(j)) return 6;
  if (j == j1728(f)) return 4;
  return 2;
}

std::vector<Fp2> enumerate_supersingular(const Fp2Field& f) {
  require_large_char(f);
  HasseSieve sieve(f);
  std::vector<Fp2> out;
  Rational mass = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Fp2 j = f.element(k);
    CurveSS c = curve_from_j(f, j);
    if (!f.is_zero(sieve.evaluate(c.a, c.b))) continue;
    if (frobenius_trace(f, c) % f.p() != 0) {
      throw InvariantViolation("Hasse invariant and point count disagree at j = " + to_string(j));
    }
    out.push_back(j);
    mass += Rational(1, automorphism_count(f, j));
  }
  Rational expected(f.p() - 1, 24);
  expected.canonicalize();
  if (mass != expected) {
    throw InvariantViolation("mass formula fails for p = " + std::to_string(f.p()) + ": got " +
                             mass.get_str());
  }
  return out;  // element order is already (c0, c1) lexicographic
}

bool modular_polynomial_vanishes(const Fp2Field& f, long ell, const Fp2& j1, const Fp2& j2) {
  const Integer p = f.p();
  Fp2 sum{};
  for (const Term& t : modular_terms(ell)) {
    Integer c = mod_floor(Integer(t.coef), p);
    Fp2 mono = f.mul(f.pow(j1, static_cast<std::uint64_t>(t.i)),
                     f.pow(j2, static_cast<std::uint64_t>(t.j)));
    sum = f.add(sum, f.scale(mono, c.get_si()));
  }
  return f.is_zero(sum);
}

std::vector<Fp2> l_isogeny_neighbors(const Fp2Field& f, const CurveSS& c, long ell) {
  require_large_char(f);
  if (ell != 2 && ell != 3) throw PreconditionError("ell must be 2 or 3");
  if (ell == f.p()) throw PreconditionError("ell must differ from p");
  j_invariant(f, c.a, c.b);  // rejects singular input
  std::vector<Fp2> out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Fp2 x = f.element(k);
    Fp2 x2 = f.mul(x, x);
    if (ell == 2) {
      Fp2 cubic = f.add(f.mul(f.add(x2, c.a), x), c.b);
      if (!f.is_zero(cubic)) continue;
      Fp2 v = f.add(f.scale(x2, 3), c.a);
      out.push_back(velu_codomain(f, c, v, f.mul(x, v)));
    } else {
      // 3x^4 + 6a x^2 + 12b x - a^2
      Fp2 psi = f.scale(f.mul(x2, x2), 3);
      psi = f.add(psi, f.scale(f.mul(c.a, x2), 6));
      psi = f.add(psi, f.scale(f.mul(c.b, x), 12));
      psi = f.sub(psi, f.mul(c.a, c.a));
      if (!f.is_zero(psi)) continue;
      Fp2 v = f.add(f.scale(x2, 6), f.scale(c.a, 2));
      Fp2 w = f.scale(f.mul(x2, x), 10);
      w = f.add(w, f.scale(f.mul(c.a, x), 6));
      w = f.add(w, f.scale(c.b, 4));
      out.push_back(velu_codomain(f, c, v, w));
    }
  }
  for (const Fp2& j : out) {
    if (!modular_polynomial_vanishes(f, ell, c.j, j)) {
      throw InvariantViolation("edge " + to_string(c.j) + " -> " + to_string(j) +
                               " fails the modular polynomial check");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> SSGraph::find(const Fp2& j) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), j);
  if (it == vertices.end() || *it != j) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

SSGraph build_graph(const Fp2Field& f, long ell) {
  SSGraph g;
  g.p = f.p();
  g.ell = ell;
  g.modulus = f.modulus();
  g.vertices = enumerate_supersingular(f);
  g.adjacency.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    std::vector<Fp2> nb = l_isogeny_neighbors(f, curve_from_j(f, g.vertices[i]), ell);
    if (static_cast<long>(nb.size()) != ell + 1) {
      throw InvariantViolation("vertex " + to_string(g.vertices[i]) + " has " +
                               std::to_string(nb.size()) + " rational kernels, expected " +
                               std::to_string(ell + 1));
    }
    for (const Fp2& j : nb) {
      auto idx = g.find(j);
      if (!idx) throw InvariantViolation("neighbour " + to_string(j) + " is not supersingular");
      g.adjacency[i].push_back(*idx);
    }
    std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
  }
  return g;
}

bool is_connected(const SSGraph& g) {
  if (g.vertices.empty()) return true;
  std::vector<bool> seen(g.vertices.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        queue.push_back(v);
      }
    }
  }
  return count == g.vertices.size();
}

IsogenyPath find_isogeny_path(const SSGraph& g, const Fp2& src, const Fp2& dst) {
  auto s = g.find(src);
  auto t = g.find(dst);
  if (!s) throw PreconditionError("source " + to_string(src) + " is not a supersingular vertex");
  if (!t) throw PreconditionError("target " + to_string(dst) + " is not a supersingular vertex");
  const std::size_t none = g.vertices.size();
  std::vector<std::size_t> parent(g.vertices.size(), none);
  parent[*s] = *s;
  std::deque<std::size_t> queue{*s};
  while (!queue.empty() && parent[*t] == none) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.adjacency[u]) {  // sorted indices = sorted j order
      if (parent[v] == none) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[*t] == none) throw PreconditionError("target is not reachable from source");
  IsogenyPath out;
  for (std::size_t v = *t;; v = parent[v]) {
    out.path.push_back(g.vertices[v]);
    if (v == *s) break;
  }
  std::reverse(out.path.begin(), out.path.end());
  out.r = out.path.size() - 1;
  out.degree = power(Integer(g.ell), out.r);
  return out;
}

}  // namespace mukai
