#include "mukai/lattice.hpp"

#include "mukai/errors.hpp"

namespace mukai {

namespace {

void check_ns_length(const LatticeSpec& spec, const IntVector& l, const char* what) {
  if (l.size() != spec.rank || spec.gram.rows() != spec.rank) {
    throw DimensionError(std::string(what) + ": NS vector of length " + std::to_string(l.size()) +
                         " for a rank-" + std::to_string(spec.rank) + " lattice");
  }
}

}  // namespace

Integer LatticeSpec::dot(const IntVector& x, const IntVector& y) const {
  return bilinear(gram, x, y);
}

MukaiVector MukaiVector::point(std::size_t rank) {
  return MukaiVector{Integer(0), IntVector(rank, Integer(0)), Integer(1)};
}

MukaiVector MukaiVector::unit(std::size_t rank) {
  return MukaiVector{Integer(1), IntVector(rank, Integer(0)), Integer(0)};
}

IntVector MukaiVector::coordinates() const {
  IntVector out;
  out.reserve(l.size() + 2);
  out.push_back(r);
  out.insert(out.end(), l.begin(), l.end());
  out.push_back(chi);
  return out;
}

MukaiVector MukaiVector::from_coordinates(const IntVector& coords) {
  if (coords.size() < 2) throw DimensionError("MukaiVector: fewer than two coordinates");
  return MukaiVector{coords.front(), IntVector(coords.begin() + 1, coords.end() - 1), coords.back()};
}

std::string to_string(const MukaiVector& v) {
  return "(" + v.r.get_str() + "," + to_string(v.l) + "," + v.chi.get_str() + ")";
}

ValidationReport validate_lattice(const LatticeSpec& spec) {
  ValidationReport report;
  if (spec.rank == 0) report.add("rank: must be positive");
  if (spec.gram.rows() != spec.rank || spec.gram.cols() != spec.rank) {
    report.add("gram: expected a " + std::to_string(spec.rank) + "x" + std::to_string(spec.rank) +
               " matrix");
    return report;
  }
  if (spec.ample.size() != spec.rank) {
    report.add("ample: expected " + std::to_string(spec.rank) + " coordinates");
  }
  if (!spec.gram.is_symmetric()) {
    report.add("gram: not symmetric");
    return report;
  }
  for (std::size_t i = 0; i < spec.rank; ++i) {
    if (mpz_even_p(spec.gram(i, i).get_mpz_t()) == 0) {
      report.add("gram: odd diagonal entry at " + std::to_string(i) + " (form is not even)");
    }
  }
  const Inertia in = inertia(spec.gram);
  if (in.zero != 0 || in.positive != 1) {
    report.add("gram: signature (" + std::to_string(in.positive) + "," +
               std::to_string(in.negative) + ") with " + std::to_string(in.zero) +
               " null directions; expected (1," + std::to_string(spec.rank - 1) + ")");
  }
  if (spec.ample.size() == spec.rank && spec.rank > 0 && spec.dot(spec.ample, spec.ample) <= 0) {
    report.add("ample: reference class has non-positive square");
  }
  return report;
}

Integer mukai_pairing(const LatticeSpec& spec, const MukaiVector& v, const MukaiVector& w) {
  check_ns_length(spec, v.l, "mukai_pairing");
  check_ns_length(spec, w.l, "mukai_pairing");
  return spec.dot(v.l, w.l) - v.r * w.chi - v.chi * w.r;
}

bool is_isotropic(const LatticeSpec& spec, const MukaiVector& v) {
  return mukai_pairing(spec, v, v) == 0;
}

bool is_ample(const LatticeSpec& spec, const IntVector& l) {
  check_ns_length(spec, l, "is_ample");
  check_ns_length(spec, spec.ample, "is_ample (reference class)");
  return spec.dot(l, l) > 0 && spec.dot(l, spec.ample) > 0;
}

ModuliCertificate moduli_ready(const LatticeSpec& spec, const MukaiVector& v) {
  check_ns_length(spec, v.l, "moduli_ready");
  ModuliCertificate c;
  c.l_square = spec.dot(v.l, v.l);
  c.l_dot_h = spec.dot(v.l, spec.ample);
  c.gcd_r_chi = gcd(v.r, v.chi);
  c.self_pairing = c.l_square - 2 * v.r * v.chi;
  c.positive_rank = v.r > 0;
  c.ample = c.l_square > 0 && c.l_dot_h > 0;
  c.coprime = c.gcd_r_chi == 1;
  c.isotropic = c.self_pairing == 0;
  return c;
}

IntMatrix extended_gram(const LatticeSpec& spec) {
  const std::size_t n = spec.rank + 2;
  IntMatrix q(n, n);
  q.set_block(1, 1, spec.gram);
  q(0, n - 1) = -1;
  q(n - 1, 0) = -1;
  return q;
}

LatticeSpec hyperbolic_plane(long a, long b) {
  return LatticeSpec{2, IntMatrix{{0, 1}, {1, 0}}, make_vector({a, b})};
}

}  // namespace mukai
