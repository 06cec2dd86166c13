#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mukai/isometry.hpp"
#include "mukai/json_integer.hpp"
#include "mukai/lattice.hpp"
#include "mukai/product_ns.hpp"

namespace mukai {

/// Tuning shared by all normalizers.
struct SearchOptions {
  /// Multiplies every a-priori search bound (>= 1).
  Integer bound_scale = 1;
  /// NS action of MukaiSwap; -Id when unset.
  std::optional<IntMatrix> swap_sigma;
};

struct CertificateEntry {
  std::string name;
  bool pass = false;
  nlohmann::json witness;
};

struct SearchStats {
  Integer n = 0;  // coprime-step twist multiple
  Integer d = 0;  // ample-step twist multiple
  Integer m = 0;  // pullback-step twist multiple
  std::uint64_t loops = 0;
  std::string branch;
};

/// Images of (0,0,1) and (1,0,0) under the equivalence built so far, plus the
/// generators appended to it (in application order).
struct NormalizationState {
  LatticeSpec spec;
  MukaiVector v;
  MukaiVector w;
  std::vector<Generator> appended;
  SearchStats stats;

  NormalizationState(LatticeSpec spec, MukaiVector v, MukaiVector w);
  static NormalizationState from_word(const IsometryWord& phi);

  void push(const Generator& g);
  /// <v, w>; equals -1 for the images of (0,0,1) and (1,0,0) under an isometry.
  Integer unit_pairing() const;
  /// Word obtained by applying the appended generators after `phi`.
  IsometryWord extend(const IsometryWord& phi) const;
};

class NormalizationResult {
 public:
  /// Recomputes apply(word, (0,0,1)) and throws InvariantViolation if it
  /// differs from `tracked_final`.
  NormalizationResult(IsometryWord word, const MukaiVector& tracked_final,
                      std::vector<CertificateEntry> certificate, SearchStats stats);

  const IsometryWord& word() const { return word_; }
  const MukaiVector& final_vector() const { return final_; }
  int dual_parity() const { return word_.dual_parity(); }
  const std::vector<CertificateEntry>& certificate() const { return certificate_; }
  const SearchStats& stats() const { return stats_; }

  bool passed() const;
  const CertificateEntry* entry(const std::string& name) const;

 private:
  IsometryWord word_;
  MukaiVector final_;
  std::vector<CertificateEntry> certificate_;
  SearchStats stats_;
};

// ---------------------------------------------------------------------------
// Vector-level steps. Each one mutates the state by appending generators.

/// Makes the rank of v positive using Shift, MukaiSwap and (when r = chi = 0)
/// one twist by the NS part of w. Returns the branch taken.
std::string positive_rank_step(NormalizationState& s, const SearchOptions& opts);

struct CoprimeSearch {
  Integer n;         // chosen twist exponent is n * multiplier
  Integer multiplier;
  Integer pairing;   // I = l . b
  Integer gcd;       // gcd(r, chi) after the twist
  Integer bound;     // documented bound on n
  std::uint64_t loops = 0;
};

/// Appends Twist(b, n * multiplier), b the NS part of w, with n >= 0 minimal
/// such that gcd(r, chi) = 1. Requires r > 0.
CoprimeSearch coprime_step(NormalizationState& s, const Integer& multiplier,
                           const SearchOptions& opts);

struct AmpleSearch {
  Integer d;
  Integer bound;
  Integer l_square;
  Integer l_dot_h;
  std::uint64_t loops = 0;
};

/// Appends Twist(theta, r d) with d >= 0 minimal such that l becomes ample.
/// Requires r > 0 and theta ample.
AmpleSearch ample_step(NormalizationState& s, const IntVector& theta, const SearchOptions& opts);

struct PrimeSplitOutcome {
  std::string label;  // "none", "I" ... "V"
  Integer n = 0;
};

/// Case analysis making r prime to every prime in `primes` (one or two
/// distinct primes), or, for two primes, splitting them between r and chi.
PrimeSplitOutcome prime_split_step(NormalizationState& s, const std::vector<Integer>& primes,
                                   const SearchOptions& opts);

/// Whether (r, chi) satisfies the prime-split postcondition for `primes`.
bool prime_split_holds(const MukaiVector& v, const std::vector<Integer>& primes);

// ---------------------------------------------------------------------------
// Word-level normalizers.

NormalizationResult normalize_positive_rank(const IsometryWord& phi, const SearchOptions& opts = {});
NormalizationResult normalize_coprime(const IsometryWord& psi, const SearchOptions& opts = {});
NormalizationResult normalize_ample(const IsometryWord& xi, const SearchOptions& opts = {});

/// Positive rank, then coprime rank/Euler characteristic, then ample NS part.
NormalizationResult normalize_full(const IsometryWord& phi, const SearchOptions& opts = {});

NormalizationResult normalize_prime_split(const IsometryWord& phi, const Integer& p1,
                                          const Integer& p2, const SearchOptions& opts = {});

/// phi acts on the lattice of C; `spec_prod` is NS(E x F) and `cover` the
/// pullback NS(E x F) -> NS(C). The result has r > 0 prime to p, an ample NS
/// part pulled back from an ample class on E x F, and gcd(r, chi) = 1.
NormalizationResult normalize_pullback(const LatticeSpec& spec_prod, const CoverDatum& cover,
                                       const IsometryWord& phi, const Integer& p,
                                       const SearchOptions& opts = {});

/// As normalize_pullback with NS(E x F) = to_lattice_spec(hl), and in addition
/// the Hom(F, E) part of the pulled-back class is separable. `t` is an
/// auxiliary prime different from the characteristic.
NormalizationResult normalize_supersingular(const HomLattice& hl, const CoverDatum& cover,
                                            const IsometryWord& phi, const Integer& t,
                                            const SearchOptions& opts = {});

/// Separable element of Hom(F, E) whose degree is t^k, k >= 1, of least
/// degree within the coefficient box [-box, box]^m.
std::optional<IntVector> find_separable_prime_power(const HomLattice& hl, const Integer& t,
                                                    long box);

}  // namespace mukai
