#include "formsieve/congruence.hpp"

#include <algorithm>
#include <string>

#include "formsieve/errors.hpp"

namespace formsieve {
namespace {

void check_factorization(std::uint64_t d, const Factorization& factorization) {
  std::uint64_t prev = 1;
  for (const auto& [p, e] : factorization) {
    if (p <= prev || e < 1 || !is_prime_u64(p)) {
      throw ValidationError("inconsistent factorization of " + std::to_string(d));
    }
    prev = p;
  }
  if (expand(factorization) != d) {
    throw ValidationError("factorization does not multiply to " + std::to_string(d));
  }
}

}  // namespace

RootSet roots_mod_prime(const Polynomial& g, std::uint64_t p, std::uint64_t bound) {
  if (p > bound) {
    throw ValidationError("prime " + std::to_string(p) + " exceeds the exhaustive root bound " +
                          std::to_string(bound));
  }
  if (!is_prime_u64(p)) throw ValidationError(std::to_string(p) + " is not prime");
  RootSet out{p, {}};
  for (std::uint64_t t = 0; t < p; ++t) {
    if (g.eval_mod(t, p) == 0) out.roots.push_back(t);
  }
  return out;
}

RootSet roots_mod_prime_power(const Polynomial& g, std::uint64_t p, int exponent) {
  if (exponent < 1) throw ValidationError("prime power exponent must be >= 1");
  RootSet current = roots_mod_prime(g, p);
  const Polynomial dg = g.derivative();
  std::uint64_t pj = p;
  for (int j = 1; j < exponent; ++j) {
    if (pj > kMaxCongruenceModulus / p) {
      throw OverflowError("p^e exceeds the 64-bit congruence bound");
    }
    const std::uint64_t next_mod = pj * p;
    std::vector<std::uint64_t> lifted;
    for (const std::uint64_t r : current.roots) {
      const std::uint64_t slope = dg.eval_mod(r, p);
      if (slope != 0) {
        const std::uint64_t quotient = g.eval_mod(r, next_mod) / pj;
        const std::uint64_t s = mul_mod((p - quotient % p) % p, inverse_mod(slope, p), p);
        lifted.push_back(r + s * pj);
      } else {
        for (std::uint64_t s = 0; s < p; ++s) {
          const std::uint64_t t = r + s * pj;
          if (g.eval_mod(t, next_mod) == 0) lifted.push_back(t);
        }
      }
    }
    std::sort(lifted.begin(), lifted.end());
    current = RootSet{next_mod, std::move(lifted)};
    pj = next_mod;
  }
  return current;
}

RootSet crt_combine(const RootSet& a, const RootSet& b) {
  if (a.modulus > kMaxCongruenceModulus / b.modulus) {
    throw OverflowError("CRT modulus exceeds the 64-bit congruence bound");
  }
  const std::uint64_t m = a.modulus * b.modulus;
  const std::uint64_t inv = inverse_mod(a.modulus % b.modulus, b.modulus);
  if (b.modulus > 1 && inv == 0) throw ValidationError("CRT moduli are not coprime");
  RootSet out{m, {}};
  out.roots.reserve(a.roots.size() * b.roots.size());
  for (const auto ra : a.roots) {
    for (const auto rb : b.roots) {
      // t = ra + a.modulus * ((rb - ra) * inv mod b.modulus)
      const std::uint64_t diff = (rb + b.modulus - ra % b.modulus) % b.modulus;
      const std::uint64_t k = mul_mod(diff, inv, b.modulus);
      out.roots.push_back(ra + a.modulus * k);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::uint64_t nu(const Polynomial& g, std::uint64_t d, const Factorization& factorization) {
  check_factorization(d, factorization);
  std::uint64_t count = 1;
  for (const auto& [p, e] : factorization) {
    count *= roots_mod_prime_power(g, p, e).count();
    if (count == 0) break;
  }
  return count;
}

RootSet roots_mod(const Polynomial& g, std::uint64_t d, const Factorization& factorization) {
  check_factorization(d, factorization);
  RootSet out{1, {0}};
  for (const auto& [p, e] : factorization) {
    out = crt_combine(out, roots_mod_prime_power(g, p, e));
  }
  return out;
}

RootSet roots_mod(const Polynomial& g, std::uint64_t d, const PrimeSieve& sieve) {
  return roots_mod(g, d, sieve.factorize(d));
}

}  // namespace formsieve
