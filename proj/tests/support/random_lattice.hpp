#pragma once

#include <cstdint>
#include <random>

#include "mukai/lattice.hpp"

namespace mukai::testing {

/// Valid lattice of the given rank (1..6): either [2k] + (-2 diag(a)) or the
/// hyperbolic plane + (-2 diag(a)), conjugated by a random unimodular matrix.
LatticeSpec random_lattice(std::mt19937_64& rng, std::size_t rank);

/// Unimodular matrix built from a few random elementary operations.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n);

long uniform(std::mt19937_64& rng, long lo, long hi);

IntVector random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi);

}  // namespace mukai::testing
