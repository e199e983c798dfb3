#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace formsieve {

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Linear sieve holding the smallest prime factor of every n <= limit.
/// Factorizations of all moduli in an experiment's d-range come from one
/// table instead of repeated trial division.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit);

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] bool is_prime(std::uint64_t n) const;
  [[nodiscard]] std::uint64_t smallest_factor(std::uint64_t n) const;
  // Ascending prime powers of n, 1 <= n <= limit. factorize(1) is empty.
  [[nodiscard]] Factorization factorize(std::uint64_t n) const;
  // All primes <= limit, ascending.
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const { return primes_; }
  // pi(x) for x <= limit.
  [[nodiscard]] std::uint64_t prime_count(std::uint64_t x) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// Deterministic primality for 64-bit n (Miller-Rabin with a base set that
// is exact below 2^64).
bool is_prime_u64(std::uint64_t n);

// Multiplies out a factorization, throwing OverflowError past 2^63.
std::uint64_t expand(const Factorization& f);

}  // namespace formsieve
