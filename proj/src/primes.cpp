#include "formsieve/primes.hpp"

#include <algorithm>
#include <array>

#include "formsieve/errors.hpp"
#include "formsieve/polynomial.hpp"

namespace formsieve {

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit) {
  if (limit >= (std::uint64_t{1} << 32)) {
    throw ValidationError("prime sieve limit must be below 2^32");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t p : primes_) {
      if (p > spf_[i] || static_cast<std::uint64_t>(p) * i > limit) break;
      spf_[static_cast<std::size_t>(p * i)] = p;
    }
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) throw ValidationError("is_prime: argument beyond sieve limit");
  return n >= 2 && spf_[n] == n;
}

std::uint64_t PrimeSieve::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > limit_) throw ValidationError("smallest_factor: argument out of range");
  return spf_[n];
}

Factorization PrimeSieve::factorize(std::uint64_t n) const {
  if (n == 0 || n > limit_) throw ValidationError("factorize: argument out of range");
  Factorization out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::uint64_t PrimeSieve::prime_count(std::uint64_t x) const {
  if (x > limit_) throw ValidationError("prime_count: argument beyond sieve limit");
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13,
                                                           17, 19, 23, 29, 31, 37};
  for (const auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (const auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t expand(const Factorization& f) {
  unsigned __int128 acc = 1;
  for (const auto& [p, e] : f) {
    for (int i = 0; i < e; ++i) {
      acc *= p;
      if (acc >= (static_cast<unsigned __int128>(1) << 63)) {
        throw OverflowError("factorization product exceeds 2^63");
      }
    }
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace formsieve
