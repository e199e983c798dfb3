#include "formsieve/factor.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "formsieve/errors.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {
namespace {

const PrimeSieve& trial_primes() {
  static const PrimeSieve sieve(kTrialDivisionBound);
  return sieve;
}

// 3.317044064679887385961981e24 (Sorenson-Webster bound for bases 2..41).
const BigInt& deterministic_bound() {
  static const BigInt bound("3317044064679887385961981");
  return bound;
}

bool strong_probable_prime(const BigInt& n, const BigInt& base, const BigInt& d, unsigned long s) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// One Brent cycle-finding attempt with f(y) = y^2 + c. Returns a divisor
// in (1, n] (n means failure).
BigInt brent(const BigInt& n, unsigned long c, const BigInt& start, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  BigInt y = start, x, ys, q = 1, g = 1, diff;
  auto step = [&](BigInt& v) {
    v = (v * v + c) % n;
    if (budget == 0) throw FactorTimeout("Pollard rho budget exhausted");
    --budget;
  };
  std::uint64_t r = 1;
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t batch = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < batch; ++i) {
        step(y);
        diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += kBatch;
    }
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      step(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split(const BigInt& n, const FactorOptions& options, std::uint64_t& budget,
           std::map<BigInt, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n, options.seed)) {
    ++out[n];
    return;
  }
  BigInt root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split(root, options, budget, out);
    split(root, options, budget, out);
    return;
  }
  const BigInt start = BigInt(static_cast<unsigned long>(2 + options.seed % 1000)) % n;
  for (unsigned long c = 1;; ++c) {
    const BigInt g = brent(n, c, start, budget);
    if (g != n) {
      split(g, options, budget, out);
      split(n / g, options, budget, out);
      return;
    }
  }
}

}  // namespace

int FactoredValue::omega_total() const {
  int total = 0;
  for (const auto& f : factors) total += f.exponent;
  return total;
}

int FactoredValue::omega_distinct() const { return static_cast<int>(factors.size()); }

BigInt FactoredValue::product() const {
  BigInt acc = 1;
  for (const auto& [p, e] : factors) {
    for (int i = 0; i < e; ++i) acc *= p;
  }
  return acc;
}

FactoredValue::Tiered FactoredValue::tiered(double small_bound, double large_bound) const {
  Tiered t;
  for (const auto& [p, e] : factors) {
    const double pd = p.get_d();
    if (pd <= small_bound) t.all_above_small = false;
    t.count += pd < large_bound ? 1 : e;
  }
  return t;
}

bool is_probable_prime(const BigInt& n, std::uint64_t seed) {
  if (n < 2) return false;
  static constexpr std::array<unsigned long, 13> kBases = {2,  3,  5,  7,  11, 13, 17,
                                                           19, 23, 29, 31, 37, 41};
  for (const auto p : kBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (const auto a : kBases) {
    if (!strong_probable_prime(n, BigInt(a), d, s)) return false;
  }
  if (n < deterministic_bound()) return true;
  std::mt19937_64 rng(seed);
  const BigInt span = n - 3;
  for (int round = 0; round < 40; ++round) {
    BigInt base = BigInt(static_cast<unsigned long>(rng() >> 1)) % span + 2;
    if (!strong_probable_prime(n, base, d, s)) return false;
  }
  return true;
}

FactoredValue factor(const BigInt& value, const FactorOptions& options) {
  if (value == 0) throw ValidationError("cannot factor zero");
  FactoredValue out;
  out.value = value;
  BigInt n = abs(value);

  const auto& primes = trial_primes().primes();
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    std::uint64_t small = n.get_ui();
    for (const std::uint64_t p : primes) {
      if (p * p > small) break;
      if (small % p != 0) continue;
      int e = 0;
      while (small % p == 0) {
        small /= p;
        ++e;
      }
      out.factors.push_back({BigInt(static_cast<unsigned long>(p)), e});
    }
    n = static_cast<unsigned long>(small);
  } else {
    for (const std::uint64_t p : primes) {
      if (BigInt(static_cast<unsigned long>(p)) * p > n) break;
      if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out.factors.push_back({BigInt(static_cast<unsigned long>(p)), e});
    }
  }
  if (n == 1) return out;

  const BigInt trial_square = BigInt(static_cast<unsigned long>(kTrialDivisionBound)) *
                              static_cast<unsigned long>(kTrialDivisionBound);
  std::map<BigInt, int> large;
  if (n < trial_square) {
    large[n] = 1;
  } else {
    std::uint64_t budget = options.rho_budget;
    split(n, options, budget, large);
  }
  for (const auto& [p, e] : large) out.factors.push_back({p, e});
  std::sort(out.factors.begin(), out.factors.end(),
            [](const BigPrimePower& a, const BigPrimePower& b) { return a.prime < b.prime; });
  return out;
}

}  // namespace formsieve
