#pragma once

#include <cstdint>
#include <vector>

#include "formsieve/forms.hpp"

namespace formsieve {

struct BigPrimePower {
  BigInt prime;
  int exponent = 0;
};

/// A nonzero integer with the complete factorization of its absolute value.
struct FactoredValue {
  BigInt value;
  std::vector<BigPrimePower> factors;  // ascending primes

  // Omega: number of prime factors counted with multiplicity.
  [[nodiscard]] int omega_total() const;
  // Number of distinct prime factors.
  [[nodiscard]] int omega_distinct() const;
  [[nodiscard]] BigInt product() const;

  struct Tiered {
    bool all_above_small = true;  // every prime factor exceeds small_bound
    int count = 0;                // primes < large_bound once, others with multiplicity
  };
  // Two-tier count: prime factors below `large_bound` are counted once,
  // those at or above it with multiplicity.
  [[nodiscard]] Tiered tiered(double small_bound, double large_bound) const;
};

struct FactorOptions {
  std::uint64_t seed = 1;
  // Total Pollard-rho iterations allowed per call before FactorTimeout.
  std::uint64_t rho_budget = 50'000'000;
};

inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000;

// Strong probable-prime test. Deterministic (bases 2..41) below 3.3e24;
// above that 40 further bases drawn from `seed` give error < 2^-80.
bool is_probable_prime(const BigInt& n, std::uint64_t seed = 1);

// Trial division to 10^6, then Brent's variant of Pollard rho with the
// polynomial constants c = 1, 2, 3, ... in order, so results depend only
// on the input. Throws ValidationError for 0 and FactorTimeout when the
// rho budget is exhausted.
FactoredValue factor(const BigInt& value, const FactorOptions& options = {});

}  // namespace formsieve
