#include "mukai/normalizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "mukai/errors.hpp"
#include "mukai/json_integer.hpp"

namespace mukai {
namespace {

using nlohmann::json;

bool divides(const Integer& p, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()) != 0;
}

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer half_square(const LatticeSpec& spec, const IntVector& b) {
  Integer sq = spec.dot(b, b);
  return sq / 2;
}

/// chi after Twist(b, k) applied to v, where I = l.b and half = b.b / 2.
Integer twisted_chi(const MukaiVector& v, const Integer& k, const Integer& pairing,
                    const Integer& half) {
  return v.chi + k * pairing + v.r * k * k * half;
}

Generator swap_generator(const NormalizationState& s, const SearchOptions& opts) {
  if (opts.swap_sigma) return MukaiSwap{*opts.swap_sigma};
  return default_swap(s.spec.rank);
}

void require_valid(const LatticeSpec& spec) {
  ValidationReport rep = validate_lattice(spec);
  if (!rep.ok()) {
    std::string msg = "invalid lattice:";
    for (const auto& v : rep.violations) msg += " " + v + ";";
    throw PreconditionError(msg);
  }
}

void require_options(const LatticeSpec& spec, const SearchOptions& opts) {
  if (opts.bound_scale < 1) throw PreconditionError("search bound scale must be >= 1");
  if (opts.swap_sigma) generator_matrix(spec, MukaiSwap{*opts.swap_sigma});
}

json vec_json(const IntVector& v) { return json(v); }

CertificateEntry entry(std::string name, bool pass, json witness) {
  return CertificateEntry{std::move(name), pass, std::move(witness)};
}

void add_moduli_entries(std::vector<CertificateEntry>& out, const LatticeSpec& spec,
                        const MukaiVector& v) {
  ModuliCertificate c = moduli_ready(spec, v);
  out.push_back(entry("positive_rank", c.positive_rank, {{"r", v.r}}));
  out.push_back(entry("ample", c.ample, {{"l_square", c.l_square}, {"l_dot_h", c.l_dot_h}}));
  out.push_back(entry("coprime", c.coprime, {{"gcd_r_chi", c.gcd_r_chi}}));
  out.push_back(entry("isotropic", c.isotropic, {{"self_pairing", c.self_pairing}}));
}

void add_isometry_entry(std::vector<CertificateEntry>& out, const IsometryWord& word) {
  bool ok = validate_isometry(word.spec(), word.matrix());
  out.push_back(entry("isometry", ok, {{"length", word.length()}}));
}

/// Twist by the NS part of w with the least n in [1, bound] making chi prime
/// to `modulus`.
Integer prime_twist_search(NormalizationState& s, const Integer& modulus,
                           const SearchOptions& opts) {
  const IntVector b = s.w.l;
  const Integer pairing = s.spec.dot(s.v.l, b);
  const Integer half = half_square(s.spec, b);
  const Integer bound = 4 * modulus * opts.bound_scale;
  for (Integer n = 1; n <= bound; ++n) {
    ++s.stats.loops;
    if (gcd(twisted_chi(s.v, n, pairing, half), modulus) == 1) {
      s.push(Twist{b, n});
      return n;
    }
  }
  throw SearchBoundExceeded("prime split: no twist up to " + to_string(bound));
}

struct ClaimOutcome {
  std::string label;
  Integer m = 0;
};

/// Makes r positive and prime to p and moves l into exponent^2 NS, using the
/// prime-split postcondition for {p, exponent}.
ClaimOutcome claim_step(NormalizationState& s, const Integer& p, const Integer& e,
                        const SearchOptions& opts) {
  ClaimOutcome out;
  if (e == 1) {
    if (s.v.r < 0) s.push(Shift{});
    out.label = "trivial";
    return out;
  }
  const Integer e2 = e * e;
  const bool direct = !divides(p, s.v.r) && !divides(e, s.v.r);
  if (!direct && !divides(p, s.v.r)) s.push(swap_generator(s, opts));
  if (divides(e, s.v.r) || s.v.r == 0) {
    throw PreconditionError("pullback step needs gcd(r, exponent) = 1; got r = " +
                            to_string(s.v.r));
  }
  if (direct && s.v.r < 0) s.push(Shift{});
  out.m = mod_floor(-mod_inverse(s.v.r, e2), e2);
  if (out.m != 0) s.push(Twist{s.v.l, out.m});
  if (!direct) {
    s.push(swap_generator(s, opts));
    if (s.v.r < 0) s.push(Shift{});
  }
  out.label = direct ? "a" : "b";
  return out;
}

void check_pullback_setting(const LatticeSpec& spec_prod, const CoverDatum& cover,
                            const LatticeSpec& spec_c, const Integer& p) {
  require_valid(spec_prod);
  require_valid(spec_c);
  if (!is_prime(p)) throw PreconditionError("p = " + to_string(p) + " is not prime");
  if (cover.exponent < 1 || cover.exponent > 3) {
    throw PreconditionError("cover exponent must be 1, 2 or 3");
  }
  if (cover.exponent > 1 && cover.exponent == p) {
    throw PreconditionError("p must differ from the cover exponent");
  }
  CoverCheck cc = check_cover(spec_prod, spec_c, cover);
  if (!cc.ok()) throw PreconditionError("cover datum does not describe a valid pullback");
  IntVector theta = cover.iota.apply(spec_prod.ample);
  if (!is_ample(spec_c, theta)) {
    throw PreconditionError("pullback of the reference ample class is not ample");
  }
}

std::vector<Integer> split_primes(const Integer& p, const Integer& e) {
  if (e == 1) return {p};
  return {p, e};
}

struct PullbackRun {
  NormalizationState state;
  std::vector<CertificateEntry> entries;
};

IntVector preimage_or_throw(const CoverDatum& cover, const IntVector& l) {
  auto x = pullback_preimage(cover, l);
  if (!x) throw InvariantViolation("NS part left the image of the pullback");
  return *x;
}

void add_pullback_entries(std::vector<CertificateEntry>& out, const LatticeSpec& spec_prod,
                          const CoverDatum& cover, const MukaiVector& v, const Integer& p) {
  Integer g = gcd(v.r, p);
  out.push_back(entry("rank_prime_to_p", g == 1, {{"r", v.r}, {"p", p}, {"gcd", g}}));
  auto x = pullback_preimage(cover, v.l);
  bool member = x.has_value() && cover.iota.apply(*x) == v.l;
  out.push_back(entry("pullback_membership", member, member ? vec_json(*x) : json(nullptr)));
  bool ample_src = member && is_ample(spec_prod, *x);
  json w = json::object();
  if (member) {
    w["l_square"] = spec_prod.dot(*x, *x);
    w["l_dot_h"] = spec_prod.dot(*x, spec_prod.ample);
  }
  out.push_back(entry("pullback_of_ample", ample_src, w));
}

}  // namespace

// ---------------------------------------------------------------------------

NormalizationState::NormalizationState(LatticeSpec spec_, MukaiVector v_, MukaiVector w_)
    : spec(std::move(spec_)), v(std::move(v_)), w(std::move(w_)) {}

NormalizationState NormalizationState::from_word(const IsometryWord& phi) {
  const auto rank = phi.spec().rank;
  return NormalizationState(phi.spec(), apply(phi, MukaiVector::point(rank)),
                            apply(phi, MukaiVector::unit(rank)));
}

void NormalizationState::push(const Generator& g) {
  v = apply_generator(spec, g, v);
  w = apply_generator(spec, g, w);
  appended.push_back(g);
}

Integer NormalizationState::unit_pairing() const { return mukai_pairing(spec, v, w); }

IsometryWord NormalizationState::extend(const IsometryWord& phi) const {
  std::vector<Generator> outer(appended.rbegin(), appended.rend());
  return compose(IsometryWord(spec, std::move(outer)), phi);
}

NormalizationResult::NormalizationResult(IsometryWord word, const MukaiVector& tracked_final,
                                         std::vector<CertificateEntry> certificate,
                                         SearchStats stats)
    : word_(std::move(word)),
      final_(apply(word_, MukaiVector::point(word_.spec().rank))),
      certificate_(std::move(certificate)),
      stats_(std::move(stats)) {
  if (final_ != tracked_final) {
    throw InvariantViolation("tracked vector " + to_string(tracked_final) +
                             " differs from the word image " + to_string(final_));
  }
}

bool NormalizationResult::passed() const {
  return std::all_of(certificate_.begin(), certificate_.end(),
                     [](const CertificateEntry& e) { return e.pass; });
}

const CertificateEntry* NormalizationResult::entry(const std::string& name) const {
  for (const auto& e : certificate_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

std::string positive_rank_step(NormalizationState& s, const SearchOptions& opts) {
  if (s.v.r > 0) return "positive";
  if (s.v.r < 0) {
    s.push(Shift{});
    return "negative";
  }
  std::string label = "zero";
  if (s.v.chi == 0) {
    Integer pairing = s.spec.dot(s.v.l, s.w.l);
    if (abs_of(pairing) != 1) {
      throw InvariantViolation("r = chi = 0 with l.b = " + to_string(pairing) +
                               "; vectors are not images of the point and unit classes");
    }
    s.push(Twist{s.w.l, 1});
    label = "zero_degenerate";
  }
  if (s.v.chi < 0) s.push(Shift{});
  s.push(swap_generator(s, opts));
  return label;
}

CoprimeSearch coprime_step(NormalizationState& s, const Integer& multiplier,
                           const SearchOptions& opts) {
  if (s.v.r <= 0) throw PreconditionError("coprime step needs r > 0");
  if (multiplier <= 0) throw PreconditionError("coprime step needs a positive multiplier");
  CoprimeSearch out;
  out.multiplier = multiplier;
  const IntVector b = s.w.l;
  out.pairing = s.spec.dot(s.v.l, b);
  const Integer half = half_square(s.spec, b);
  const Integer r = s.v.r;
  // A prime dividing r and the multiplier leaves chi unchanged modulo itself.
  Integer stuck = gcd(gcd(r, multiplier), s.v.chi);
  if (stuck != 1) {
    throw PreconditionError("r, chi and the twist multiplier share the factor " +
                            to_string(stuck));
  }
  // Bad residues of n live modulo rad(r), so n <= rad(r) <= r. The radical
  // itself is only computed when the cheap bound is exhausted.
  out.bound = (2 * r + 1) * opts.bound_scale;
  bool refined = false;
  for (Integer n = 0;; ++n) {
    if (n > out.bound) {
      if (refined) throw SearchBoundExceeded("coprime step exceeded " + to_string(out.bound));
      out.bound = (2 * radical_upper_bound(r) * r + 1) * opts.bound_scale;
      refined = true;
      if (n > out.bound) throw SearchBoundExceeded("coprime step exceeded " + to_string(out.bound));
    }
    ++out.loops;
    Integer chi = twisted_chi(s.v, n * multiplier, out.pairing, half);
    Integer g = gcd(r, chi);
    if (g == 1) {
      out.n = n;
      out.gcd = g;
      break;
    }
  }
  if (out.n != 0) s.push(Twist{b, out.n * multiplier});
  s.stats.n = out.n;
  s.stats.loops += out.loops;
  return out;
}

AmpleSearch ample_step(NormalizationState& s, const IntVector& theta, const SearchOptions& opts) {
  if (s.v.r <= 0) throw PreconditionError("ample step needs r > 0");
  if (theta.size() != s.spec.rank || !is_ample(s.spec, theta)) {
    throw PreconditionError("ample step needs an ample twisting class");
  }
  AmpleSearch out;
  const IntVector l = s.v.l;
  const Integer r = s.v.r;
  const Integer l_theta = s.spec.dot(l, theta);
  const Integer l_sq = s.spec.dot(l, l);
  const Integer theta_sq = s.spec.dot(theta, theta);
  const Integer theta_h = s.spec.dot(theta, s.spec.ample);
  const Integer l_h = s.spec.dot(l, s.spec.ample);
  // (l + t theta) ample for t = r^2 d. The set of such t is a half line, since
  // the positive cone component is convex.
  auto ample_at = [&](const Integer& d) {
    ++out.loops;
    Integer t = r * r * d;
    Integer sq = l_sq + 2 * t * l_theta + t * t * theta_sq;
    Integer dh = l_h + t * theta_h;
    return sq > 0 && dh > 0;
  };
  out.bound = 4 * (abs_of(l_theta) + abs_of(l_sq) + 2) * opts.bound_scale;
  if (ample_at(0)) {
    out.d = 0;
  } else {
    if (!ample_at(out.bound)) {
      throw SearchBoundExceeded("ample step exceeded " + to_string(out.bound));
    }
    Integer lo = 0, hi = out.bound;  // predicate false at lo, true at hi
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      if (ample_at(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.d = hi;
    s.push(Twist{theta, r * out.d});
  }
  out.l_square = s.spec.dot(s.v.l, s.v.l);
  out.l_dot_h = s.spec.dot(s.v.l, s.spec.ample);
  s.stats.d = out.d;
  s.stats.loops += out.loops;
  return out;
}

bool prime_split_holds(const MukaiVector& v, const std::vector<Integer>& primes) {
  if (primes.size() == 1) return !divides(primes[0], v.r);
  const Integer& p1 = primes.at(0);
  const Integer& p2 = primes.at(1);
  bool a1 = divides(p1, v.r), a2 = divides(p2, v.r);
  bool c1 = divides(p1, v.chi), c2 = divides(p2, v.chi);
  return (!a1 && !a2) || (a1 && !c1 && c2 && !a2) || (a2 && !c2 && c1 && !a1);
}

PrimeSplitOutcome prime_split_step(NormalizationState& s, const std::vector<Integer>& primes,
                                   const SearchOptions& opts) {
  if (primes.empty() || primes.size() > 2) {
    throw PreconditionError("prime split takes one or two primes");
  }
  for (const auto& q : primes) {
    if (!is_prime(q)) throw PreconditionError(to_string(q) + " is not prime");
  }
  if (primes.size() == 2 && primes[0] == primes[1]) {
    throw PreconditionError("prime split needs distinct primes");
  }
  PrimeSplitOutcome out;
  if (prime_split_holds(s.v, primes)) {
    out.label = "none";
    return out;
  }
  Integer modulus = 1;
  for (const auto& q : primes) modulus *= q;

  if (primes.size() == 1) {
    if (!divides(primes[0], s.v.chi)) {
      out.label = "I";
    } else {
      out.label = "II";
      out.n = prime_twist_search(s, modulus, opts);
    }
    s.push(swap_generator(s, opts));
  } else {
    const Integer& p1 = primes[0];
    const Integer& p2 = primes[1];
    bool a1 = divides(p1, s.v.r), a2 = divides(p2, s.v.r);
    bool c1 = divides(p1, s.v.chi), c2 = divides(p2, s.v.chi);
    if (!c1 && !c2) {
      out.label = "I";
      s.push(swap_generator(s, opts));
    } else if (c1 && c2 && a1 != a2) {
      out.label = "IV";
      s.push(swap_generator(s, opts));
      out.n = prime_twist_search(s, modulus, opts);
      s.push(swap_generator(s, opts));
    } else {
      out.label = (a1 && a2) ? ((c1 && c2) ? "II" : "III") : "V";
      out.n = prime_twist_search(s, modulus, opts);
      s.push(swap_generator(s, opts));
    }
  }
  if (!prime_split_holds(s.v, primes)) {
    throw InvariantViolation("prime split case " + out.label + " left " + to_string(s.v));
  }
  return out;
}

// ---------------------------------------------------------------------------

NormalizationResult normalize_positive_rank(const IsometryWord& phi, const SearchOptions& opts) {
  require_valid(phi.spec());
  require_options(phi.spec(), opts);
  NormalizationState s = NormalizationState::from_word(phi);
  s.stats.branch = positive_rank_step(s, opts);
  IsometryWord word = s.extend(phi);
  std::vector<CertificateEntry> cert;
  cert.push_back(entry("positive_rank", s.v.r > 0, {{"r", s.v.r}, {"branch", s.stats.branch}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

NormalizationResult normalize_coprime(const IsometryWord& psi, const SearchOptions& opts) {
  require_valid(psi.spec());
  require_options(psi.spec(), opts);
  NormalizationState s = NormalizationState::from_word(psi);
  const Integer r0 = s.v.r;
  CoprimeSearch c = coprime_step(s, 1, opts);
  IsometryWord word = s.extend(psi);
  std::vector<CertificateEntry> cert;
  cert.push_back(entry("coprime", gcd(s.v.r, s.v.chi) == 1,
                       {{"n", c.n}, {"bound", c.bound}, {"gcd_r_chi", gcd(s.v.r, s.v.chi)}}));
  cert.push_back(entry("rank_preserved", s.v.r == r0, {{"r", s.v.r}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

NormalizationResult normalize_ample(const IsometryWord& xi, const SearchOptions& opts) {
  require_valid(xi.spec());
  require_options(xi.spec(), opts);
  NormalizationState s = NormalizationState::from_word(xi);
  if (s.v.r <= 0 || gcd(s.v.r, s.v.chi) != 1) {
    throw PreconditionError("ample step needs r > 0 and gcd(r, chi) = 1");
  }
  AmpleSearch a = ample_step(s, s.spec.ample, opts);
  IsometryWord word = s.extend(xi);
  std::vector<CertificateEntry> cert;
  add_moduli_entries(cert, s.spec, s.v);
  cert.push_back(entry("ample_search", a.d <= a.bound, {{"d", a.d}, {"bound", a.bound}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

NormalizationResult normalize_full(const IsometryWord& phi, const SearchOptions& opts) {
  require_valid(phi.spec());
  require_options(phi.spec(), opts);
  NormalizationState s = NormalizationState::from_word(phi);
  s.stats.branch = positive_rank_step(s, opts);
  CoprimeSearch c = coprime_step(s, 1, opts);
  AmpleSearch a = ample_step(s, s.spec.ample, opts);
  IsometryWord word = s.extend(phi);
  std::vector<CertificateEntry> cert;
  add_moduli_entries(cert, s.spec, s.v);
  cert.push_back(entry("coprime_search", c.n <= c.bound, {{"n", c.n}, {"bound", c.bound}}));
  cert.push_back(entry("ample_search", a.d <= a.bound, {{"d", a.d}, {"bound", a.bound}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

NormalizationResult normalize_prime_split(const IsometryWord& phi, const Integer& p1,
                                          const Integer& p2, const SearchOptions& opts) {
  require_valid(phi.spec());
  require_options(phi.spec(), opts);
  NormalizationState s = NormalizationState::from_word(phi);
  const std::vector<Integer> primes{p1, p2};
  PrimeSplitOutcome o = prime_split_step(s, primes, opts);
  s.stats.branch = o.label;
  s.stats.n = o.n;
  IsometryWord word = s.extend(phi);
  std::vector<CertificateEntry> cert;
  cert.push_back(entry("prime_split", prime_split_holds(s.v, primes),
                       {{"case", o.label},
                        {"n", o.n},
                        {"r", s.v.r},
                        {"chi", s.v.chi},
                        {"primes", json(primes)}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

NormalizationResult normalize_pullback(const LatticeSpec& spec_prod, const CoverDatum& cover,
                                       const IsometryWord& phi, const Integer& p,
                                       const SearchOptions& opts) {
  check_pullback_setting(spec_prod, cover, phi.spec(), p);
  require_options(phi.spec(), opts);
  const Integer& e = cover.exponent;
  NormalizationState s = NormalizationState::from_word(phi);
  PrimeSplitOutcome o = prime_split_step(s, split_primes(p, e), opts);
  ClaimOutcome claim = claim_step(s, p, e, opts);
  preimage_or_throw(cover, s.v.l);
  s.stats.m = claim.m;
  s.stats.branch = o.label + "/" + claim.label;
  CoprimeSearch c = coprime_step(s, e * e, opts);
  AmpleSearch a = ample_step(s, cover.iota.apply(spec_prod.ample), opts);

  IsometryWord word = s.extend(phi);
  std::vector<CertificateEntry> cert;
  add_moduli_entries(cert, s.spec, s.v);
  add_pullback_entries(cert, spec_prod, cover, s.v, p);
  cert.push_back(entry("coprime_search", c.n <= c.bound, {{"n", c.n}, {"bound", c.bound}}));
  cert.push_back(entry("ample_search", a.d <= a.bound, {{"d", a.d}, {"bound", a.bound}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

std::optional<IntVector> find_separable_prime_power(const HomLattice& hl, const Integer& t,
                                                    long box) {
  const std::size_t m = hl.rank;
  if (m == 0 || box <= 0 || t < 2) return std::nullopt;
  std::optional<IntVector> best;
  Integer best_deg = 0;
  std::vector<long> x(m, -box);
  IntVector xv(m);
  auto is_power = [&](Integer d) {
    if (d < t) return false;
    while (divides(t, d)) d /= t;
    return d == 1;
  };
  // Machine-word degree when the Gram entries are small enough; the mpz
  // path is kept for everything else.
  std::vector<long> g;
  bool small = box <= (1L << 20);
  for (std::size_t i = 0; small && i < m; ++i)
    for (std::size_t j = 0; small && j < m; ++j) {
      const Integer& e = hl.deg_gram(i, j);
      small = e.fits_slong_p() && abs_of(e) < (Integer(1) << 40);
      if (small) g.push_back(e.get_si());
    }
  while (true) {
    if (small) {
      __int128 q = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) q += static_cast<__int128>(g[i * m + j]) * x[i] * x[j];
      q /= 2;
      bool skip = q <= 0 || (best && q > static_cast<__int128>(best_deg.get_si()));
      if (skip) {
        std::size_t i = 0;
        while (i < m && x[i] == box) x[i++] = -box;
        if (i == m) break;
        ++x[i];
        continue;
      }
    }
    for (std::size_t i = 0; i < m; ++i) xv[i] = x[i];
    Integer d = degree(hl, xv);
    // Least degree first; ties go to the lexicographically largest vector.
    if ((!best || d < best_deg || (d == best_deg && xv > *best)) && is_power(d) &&
        is_separable(hl, xv)) {
      best = xv;
      best_deg = d;
    }
    std::size_t i = 0;
    while (i < m && x[i] == box) x[i++] = -box;
    if (i == m) break;
    ++x[i];
  }
  return best;
}

NormalizationResult normalize_supersingular(const HomLattice& hl, const CoverDatum& cover,
                                            const IsometryWord& phi, const Integer& t,
                                            const SearchOptions& opts) {
  ValidationReport hrep = validate_hom_lattice(hl);
  if (!hrep.ok()) throw PreconditionError("invalid Hom lattice: " + hrep.violations.front());
  if (hl.rank == 0) throw PreconditionError("supersingular step needs a non-zero Hom lattice");
  const Integer p = hl.p;
  if (!is_prime(t) || t == p) throw PreconditionError("t must be a prime different from p");
  const LatticeSpec spec_prod = to_lattice_spec(hl, 1, 1);
  check_pullback_setting(spec_prod, cover, phi.spec(), p);
  require_options(phi.spec(), opts);
  const Integer& e = cover.exponent;

  NormalizationState s = NormalizationState::from_word(phi);
  PrimeSplitOutcome o = prime_split_step(s, split_primes(p, e), opts);
  ClaimOutcome claim = claim_step(s, p, e, opts);
  s.stats.m = claim.m;
  s.stats.branch = o.label + "/" + claim.label;

  ProductClass x = ProductClass::from_coordinates(preimage_or_throw(cover, s.v.l));
  json xi_witness = nullptr;
  if (!is_separable(hl, x.phi)) {
    std::optional<IntVector> xi;
    const Integer limit = 8 * opts.bound_scale;
    for (Integer box = 8; !xi && box <= limit; box *= 2) {
      xi = find_separable_prime_power(hl, t, box.get_si());
    }
    if (!xi) throw SearchBoundExceeded("no separable element of t-power degree found");
    SeparableShift shift = separability_shift(hl, x.phi, *xi, s.v.r);
    ProductClass step{0, 0, *xi};
    s.push(Twist{cover.iota.apply(step.coordinates()), 1});
    x = ProductClass::from_coordinates(preimage_or_throw(cover, s.v.l));
    if (x.phi != shift.gamma) throw InvariantViolation("separability twist landed elsewhere");
    xi_witness = {{"xi", *xi}, {"degree", degree(hl, *xi)}};
    s.stats.branch += "/xi";
  }

  CoprimeSearch c = coprime_step(s, p * e * e, opts);
  AmpleSearch a = ample_step(s, cover.iota.apply(spec_prod.ample), opts);

  IsometryWord word = s.extend(phi);
  std::vector<CertificateEntry> cert;
  add_moduli_entries(cert, s.spec, s.v);
  add_pullback_entries(cert, spec_prod, cover, s.v, p);
  auto fin = pullback_preimage(cover, s.v.l);
  bool sep = fin && is_separable(hl, ProductClass::from_coordinates(*fin).phi);
  json sep_w = {{"xi_step", xi_witness}};
  if (fin) sep_w["tau"] = tau_image(hl, ProductClass::from_coordinates(*fin).phi);
  cert.push_back(entry("separable", sep, sep_w));
  cert.push_back(entry("coprime_search", c.n <= c.bound, {{"n", c.n}, {"bound", c.bound}}));
  cert.push_back(entry("ample_search", a.d <= a.bound, {{"d", a.d}, {"bound", a.bound}}));
  add_isometry_entry(cert, word);
  return NormalizationResult(std::move(word), s.v, std::move(cert), s.stats);
}

}  // namespace mukai
