#include "mukai/product_ns.hpp"

#include "mukai/errors.hpp"

namespace mukai {

namespace {

void check_hom_length(const HomLattice& hl, const IntVector& phi, const char* what) {
  if (phi.size() != hl.rank) {
    throw DimensionError(std::string(what) + ": Hom vector of length " + std::to_string(phi.size()) +
                         " for a rank-" + std::to_string(hl.rank) + " Hom lattice");
  }
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

ValidationReport validate_hom_lattice(const HomLattice& hl) {
  ValidationReport report;
  if (hl.rank > 4) report.add("rank: Hom(F,E) has rank at most 4");
  if (hl.deg_gram.rows() != hl.rank || hl.deg_gram.cols() != hl.rank) {
    report.add("deg_gram: expected a " + std::to_string(hl.rank) + "x" + std::to_string(hl.rank) +
               " matrix");
    return report;
  }
  if (!is_prime(hl.p)) report.add("p: characteristic must be prime");
  if (hl.rank > 0 && hl.tau.cols() != hl.rank) {
    report.add("tau: expected " + std::to_string(hl.rank) + " columns");
  }
  if (!hl.deg_gram.is_symmetric()) {
    report.add("deg_gram: not symmetric");
    return report;
  }
  for (std::size_t i = 0; i < hl.rank; ++i) {
    if (mpz_odd_p(hl.deg_gram(i, i).get_mpz_t()) != 0) {
      report.add("deg_gram: odd diagonal entry at " + std::to_string(i));
    }
  }
  if (hl.rank > 0 && inertia(hl.deg_gram).positive != hl.rank) {
    report.add("deg_gram: degree form is not positive definite");
  }
  return report;
}

Integer bil(const HomLattice& hl, const IntVector& phi, const IntVector& psi) {
  check_hom_length(hl, phi, "bil");
  check_hom_length(hl, psi, "bil");
  return bilinear(hl.deg_gram, phi, psi);
}

Integer degree(const HomLattice& hl, const IntVector& phi) { return bil(hl, phi, phi) / 2; }

IntVector ProductClass::coordinates() const {
  IntVector out{a, b};
  out.insert(out.end(), phi.begin(), phi.end());
  return out;
}

ProductClass ProductClass::from_coordinates(const IntVector& coords) {
  if (coords.size() < 2) throw DimensionError("ProductClass: fewer than two coordinates");
  return ProductClass{coords[0], coords[1], IntVector(coords.begin() + 2, coords.end())};
}

ProductClass operator+(const ProductClass& x, const ProductClass& y) {
  if (x.phi.size() != y.phi.size()) throw DimensionError("ProductClass: rank mismatch in sum");
  ProductClass out{x.a + y.a, x.b + y.b, x.phi};
  for (std::size_t i = 0; i < out.phi.size(); ++i) out.phi[i] += y.phi[i];
  return out;
}

Integer product_pairing(const HomLattice& hl, const ProductClass& c1, const ProductClass& c2) {
  return c1.a * c2.b + c2.a * c1.b - bil(hl, c1.phi, c2.phi);
}

LatticeSpec to_lattice_spec(const HomLattice& hl, long ample_a, long ample_b) {
  if (ample_a <= 0 || ample_b <= 0) {
    throw PreconditionError("to_lattice_spec: reference degrees must be positive");
  }
  if (hl.deg_gram.rows() != hl.rank || (hl.rank > 0 && inertia(hl.deg_gram).positive != hl.rank)) {
    throw PreconditionError("to_lattice_spec: degree form is not positive definite");
  }
  const std::size_t n = 2 + hl.rank;
  LatticeSpec spec{n, IntMatrix(n, n), IntVector(n, Integer(0))};
  spec.gram(0, 1) = 1;
  spec.gram(1, 0) = 1;
  spec.gram.set_block(2, 2, -hl.deg_gram);
  spec.ample[0] = ample_a;
  spec.ample[1] = ample_b;
  return spec;
}

IntVector tau_image(const HomLattice& hl, const IntVector& phi) {
  check_hom_length(hl, phi, "tau_image");
  if (hl.rank == 0) return {};
  IntVector out = hl.tau.apply(phi);
  for (auto& x : out) x = mod_floor(x, Integer(hl.p));
  return out;
}

bool is_separable(const HomLattice& hl, const IntVector& phi) {
  check_hom_length(hl, phi, "is_separable");
  if (is_zero(phi)) return false;
  return !is_zero(tau_image(hl, phi));
}

SeparableShift separability_shift(const HomLattice& hl, const IntVector& phi_insep,
                                  const IntVector& xi_sep, const Integer& r) {
  check_hom_length(hl, phi_insep, "separability_shift");
  check_hom_length(hl, xi_sep, "separability_shift");
  if (!is_separable(hl, xi_sep)) {
    throw PreconditionError("separability_shift: xi is not separable");
  }
  if (!is_zero(tau_image(hl, phi_insep))) {
    throw PreconditionError("separability_shift: phi is separable");
  }
  if (gcd(r, Integer(hl.p)) != 1) {
    throw PreconditionError("separability_shift: r = " + r.get_str() + " is not prime to p = " +
                            std::to_string(hl.p));
  }
  SeparableShift out;
  out.gamma = phi_insep;
  for (std::size_t i = 0; i < hl.rank; ++i) out.gamma[i] += r * xi_sep[i];
  out.tau_value = tau_image(hl, out.gamma);
  if (!is_separable(hl, out.gamma)) {
    throw InvariantViolation("separability_shift: result is not separable");
  }
  return out;
}

CoverCheck check_cover(const LatticeSpec& src, const LatticeSpec& dst, const CoverDatum& c) {
  CoverCheck out;
  out.shape = c.iota.rows() == dst.rank && c.iota.cols() == src.rank &&
              src.gram.rows() == src.rank && dst.gram.rows() == dst.rank && c.degree > 0 &&
              c.exponent > 0;
  if (!out.shape) return out;
  out.scaling = c.iota.transpose() * dst.gram * c.iota == c.degree * src.gram;
  // e^2 Z^n lies in image(iota) iff iota has full row rank and every invariant
  // factor divides e^2.
  const SmithForm snf = smith_normal_form(c.iota);
  out.invariant_factors = snf.invariant_factors();
  const Integer e2 = c.exponent * c.exponent;
  out.neron_inclusion = snf.rank == dst.rank;
  for (const auto& d : out.invariant_factors) {
    if (mpz_divisible_p(e2.get_mpz_t(), d.get_mpz_t()) == 0) out.neron_inclusion = false;
  }
  out.exponent_divides = mpz_divisible_p(c.degree.get_mpz_t(), c.exponent.get_mpz_t()) != 0;
  return out;
}

bool validate_cover(const LatticeSpec& src, const LatticeSpec& dst, const CoverDatum& c) {
  return check_cover(src, dst, c).ok();
}

std::optional<IntVector> pullback_preimage(const CoverDatum& c, const IntVector& l) {
  if (l.size() != c.iota.rows()) throw DimensionError("pullback_preimage: class length mismatch");
  return solve_integral(c.iota, l);
}

Integer complementary_degree(const Integer& e, int dim, const Integer& deg_nu) {
  if (e <= 0 || dim <= 0 || deg_nu <= 0) {
    throw PreconditionError("complementary_degree: arguments must be positive");
  }
  const Integer full = power(e, static_cast<unsigned long>(2 * dim));
  if (mpz_divisible_p(full.get_mpz_t(), deg_nu.get_mpz_t()) == 0) {
    throw PreconditionError("complementary_degree: " + deg_nu.get_str() + " does not divide " +
                            full.get_str());
  }
  return full / deg_nu;
}

}  // namespace mukai
