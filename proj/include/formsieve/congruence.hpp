#pragma once

#include <cstdint>
#include <vector>

#include "formsieve/polynomial.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {

/// Roots t in [0, d) of g(t) == 0 (mod d), sorted and duplicate-free.
struct RootSet {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> roots;

  [[nodiscard]] std::uint64_t count() const { return roots.size(); }
};

inline constexpr std::uint64_t kExhaustiveRootBound = 1'000'000;
// Largest modulus handled by the 64-bit congruence arithmetic.
inline constexpr std::uint64_t kMaxCongruenceModulus = std::uint64_t{1} << 62;

// Exhaustive root search mod a prime p <= bound.
RootSet roots_mod_prime(const Polynomial& g, std::uint64_t p,
                        std::uint64_t bound = kExhaustiveRootBound);

// Roots mod p^e. Nonsingular roots lift uniquely (Hensel); singular roots
// are lifted by trying every one of the p candidates at each level.
RootSet roots_mod_prime_power(const Polynomial& g, std::uint64_t p, int exponent);

// Glue root sets for pairwise coprime moduli by CRT.
RootSet crt_combine(const RootSet& a, const RootSet& b);

// nu(d) = prod nu(p^e) over the given factorization of d. nu(1) = 1.
std::uint64_t nu(const Polynomial& g, std::uint64_t d, const Factorization& factorization);

// Full root set mod d, glued by CRT. roots_mod(g, 1, {}) = {0}.
RootSet roots_mod(const Polynomial& g, std::uint64_t d, const Factorization& factorization);

// Same, factoring d with the sieve.
RootSet roots_mod(const Polynomial& g, std::uint64_t d, const PrimeSieve& sieve);

}  // namespace formsieve
