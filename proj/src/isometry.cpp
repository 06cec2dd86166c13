#include "mukai/isometry.hpp"

#include <random>

#include "mukai/errors.hpp"

namespace mukai {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_sigma(const LatticeSpec& spec, const IntMatrix& sigma) {
  if (sigma.rows() != spec.rank || sigma.cols() != spec.rank) {
    throw PreconditionError("MukaiSwap: sigma must be " + std::to_string(spec.rank) + "x" +
                            std::to_string(spec.rank));
  }
  if (sigma.transpose() * spec.gram * sigma != spec.gram) {
    throw PreconditionError("MukaiSwap: sigma is not an isometry of NS");
  }
  if (sigma * sigma != IntMatrix::identity(spec.rank)) {
    throw PreconditionError("MukaiSwap: sigma is not an involution");
  }
}

void check_twist(const LatticeSpec& spec, const Twist& t) {
  if (t.b.size() != spec.rank) {
    throw PreconditionError("Twist: class of length " + std::to_string(t.b.size()) +
                            " for a rank-" + std::to_string(spec.rank) + " lattice");
  }
  if (mpz_odd_p(spec.dot(t.b, t.b).get_mpz_t()) != 0) {
    throw PreconditionError("Twist: class with odd square (lattice is not even)");
  }
}

}  // namespace

MukaiSwap default_swap(std::size_t rank) { return MukaiSwap{-IntMatrix::identity(rank)}; }

std::string generator_name(const Generator& g) {
  return std::visit(overloaded{
                        [](const Shift&) { return std::string("shift"); },
                        [](const Twist& t) {
                          return "twist(" + to_string(t.b) + ", " + t.n.get_str() + ")";
                        },
                        [](const MukaiSwap&) { return std::string("swap"); },
                        [](const Custom&) { return std::string("custom"); },
                    },
                    g);
}

IntMatrix generator_matrix(const LatticeSpec& spec, const Generator& g) {
  const std::size_t rho = spec.rank;
  const std::size_t n = rho + 2;
  const std::size_t chi = rho + 1;
  return std::visit(
      overloaded{
          [&](const Shift&) { return -IntMatrix::identity(n); },
          [&](const Twist& t) {
            check_twist(spec, t);
            IntMatrix m = IntMatrix::identity(n);
            const IntVector gb = spec.gram.apply(t.b);
            const Integer bb = spec.dot(t.b, t.b);
            for (std::size_t i = 0; i < rho; ++i) {
              m(1 + i, 0) = t.n * t.b[i];
              m(chi, 1 + i) = t.n * gb[i];
            }
            // b.b is even, so the division is exact.
            m(chi, 0) = t.n * t.n * (bb / 2);
            return m;
          },
          [&](const MukaiSwap& s) {
            check_sigma(spec, s.sigma);
            IntMatrix m(n, n);
            m(0, chi) = 1;
            m(chi, 0) = 1;
            m.set_block(1, 1, s.sigma);
            return m;
          },
          [&](const Custom& c) {
            if (c.m.rows() != n || c.m.cols() != n) {
              throw PreconditionError("Custom: matrix must be " + std::to_string(n) + "x" +
                                      std::to_string(n));
            }
            if (!validate_isometry(spec, c.m)) {
              throw PreconditionError("Custom: matrix is not an integral isometry of the Mukai lattice");
            }
            return c.m;
          },
      },
      g);
}

MukaiVector apply_generator(const LatticeSpec& spec, const Generator& g, const MukaiVector& v) {
  if (v.l.size() != spec.rank) throw DimensionError("apply_generator: NS length mismatch");
  return std::visit(
      overloaded{
          [&](const Shift&) {
            MukaiVector out = v;
            out.r = -out.r;
            out.chi = -out.chi;
            for (auto& x : out.l) x = -x;
            return out;
          },
          [&](const Twist& t) {
            check_twist(spec, t);
            MukaiVector out = v;
            for (std::size_t i = 0; i < spec.rank; ++i) out.l[i] += v.r * t.n * t.b[i];
            out.chi = v.chi + t.n * spec.dot(v.l, t.b) + v.r * t.n * t.n * (spec.dot(t.b, t.b) / 2);
            return out;
          },
          [&](const MukaiSwap& s) {
            check_sigma(spec, s.sigma);
            return MukaiVector{v.chi, s.sigma.apply(v.l), v.r};
          },
          [&](const Custom& c) {
            return MukaiVector::from_coordinates(generator_matrix(spec, c).apply(v.coordinates()));
          },
      },
      g);
}

Generator inverse_generator(const LatticeSpec& spec, const Generator& g) {
  return std::visit(overloaded{
                        [](const Shift& s) -> Generator { return s; },
                        [](const Twist& t) -> Generator { return Twist{t.b, -t.n}; },
                        [](const MukaiSwap& s) -> Generator { return s; },
                        [&](const Custom& c) -> Generator {
                          auto inv = integral_inverse(generator_matrix(spec, c));
                          if (!inv) throw PreconditionError("Custom: matrix has no integral inverse");
                          return Custom{*inv};
                        },
                    },
                    g);
}

IsometryWord::IsometryWord(LatticeSpec spec)
    : spec_(std::move(spec)), matrix_(IntMatrix::identity(spec_.rank + 2)) {}

IsometryWord::IsometryWord(LatticeSpec spec, std::vector<Generator> generators)
    : IsometryWord(std::move(spec)) {
  for (const auto& g : generators) {
    matrix_ = matrix_ * generator_matrix(spec_, g);
    if (std::holds_alternative<MukaiSwap>(g)) dual_parity_ ^= 1;
  }
  generators_ = std::move(generators);
}

IsometryWord IsometryWord::then(const Generator& g) const {
  return compose(IsometryWord(spec_, {g}), *this);
}

IsometryWord compose(const IsometryWord& outer, const IsometryWord& inner) {
  if (!(outer.spec_ == inner.spec_)) {
    throw PreconditionError("compose: words act on different lattices");
  }
  IsometryWord out(outer.spec_);
  out.generators_ = outer.generators_;
  out.generators_.insert(out.generators_.end(), inner.generators_.begin(), inner.generators_.end());
  out.matrix_ = outer.matrix_ * inner.matrix_;
  out.dual_parity_ = outer.dual_parity_ ^ inner.dual_parity_;
  return out;
}

MukaiVector apply(const IsometryWord& w, const MukaiVector& v) {
  if (v.l.size() != w.spec().rank) throw DimensionError("apply: NS length mismatch");
  return MukaiVector::from_coordinates(w.matrix().apply(v.coordinates()));
}

bool is_filtered(const IsometryWord& w) {
  const auto pt = MukaiVector::point(w.spec().rank);
  return apply(w, pt) == pt;
}

bool validate_isometry(const LatticeSpec& spec, const IntMatrix& m) {
  const std::size_t n = spec.rank + 2;
  if (m.rows() != n || m.cols() != n) return false;
  const IntMatrix q = extended_gram(spec);
  if (m.transpose() * q * m != q) return false;
  const Integer det = determinant(m);
  return det == 1 || det == -1;
}

IsometryWord inverse(const IsometryWord& w) {
  std::vector<Generator> gens;
  gens.reserve(w.length());
  for (auto it = w.generators().rbegin(); it != w.generators().rend(); ++it) {
    gens.push_back(inverse_generator(w.spec(), *it));
  }
  return IsometryWord(w.spec(), std::move(gens));
}

IsometryWord random_isometry(const LatticeSpec& spec, std::uint64_t seed, std::size_t length) {
  // Explicit modular reduction keeps the sequence identical across standard
  // libraries (uniform_int_distribution is implementation-defined).
  std::mt19937_64 rng(seed);
  auto uniform = [&](long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
  };
  std::vector<Generator> gens;
  gens.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    switch (uniform(0, 2)) {
      case 0:
        gens.emplace_back(Shift{});
        break;
      case 1: {
        Twist t;
        t.b.reserve(spec.rank);
        for (std::size_t i = 0; i < spec.rank; ++i) t.b.emplace_back(uniform(-2, 2));
        t.n = uniform(-3, 3);
        gens.emplace_back(std::move(t));
        break;
      }
      default:
        gens.emplace_back(default_swap(spec.rank));
        break;
    }
  }
  return IsometryWord(spec, std::move(gens));
}

}  // namespace mukai
