#include <doctest.h>

#include <numeric>

#include "formsieve/congruence.hpp"
#include "formsieve/errors.hpp"
#include "formsieve/primes.hpp"
#include "oracles.hpp"

using namespace formsieve;

namespace {

const Polynomial kCubic({1, 0, 0, 2});   // 2t^3 + 1
const Polynomial kCircle({1, 0, 1});     // t^2 + 1

bool all_roots_valid(const Polynomial& g, const RootSet& rs) {
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    if (g.eval_mod(rs.roots[i], rs.modulus) != 0) return false;
    if (i > 0 && rs.roots[i - 1] >= rs.roots[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("modular helpers") {
  CHECK(mul_mod(std::uint64_t{1} << 62, 4, (std::uint64_t{1} << 63) - 25) ==
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) %
                                   ((std::uint64_t{1} << 63) - 25)));
  CHECK(pow_mod(3, 100, 1'000'000'007) == 886041711);
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(4, 8) == 0);
  CHECK(inverse_mod(5, 1) == 0);
  CHECK(reduce_signed(-7, 5) == 3);
  CHECK(Polynomial({1, 0, 0, 2}).eval_mod(3, 5) == 0);
  CHECK(Polynomial({3, 0, 0}).degree() == 0);
  CHECK(Polynomial({1, 0, 0, 2}).derivative() == Polynomial({0, 0, 6}));
}

TEST_CASE("prime sieve") {
  const PrimeSieve sieve(100'000);
  CHECK(sieve.prime_count(100) == 25);
  CHECK(sieve.prime_count(100'000) == 9592);
  CHECK(sieve.factorize(1).empty());
  CHECK(sieve.factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  CHECK(sieve.factorize(99991) == Factorization{{99991, 1}});
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(sieve.is_prime(n) == oracle::is_prime_trial(n));
    CHECK(expand(sieve.factorize(n)) == n);
  }
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
  CHECK_THROWS_AS(expand({{2, 64}}), OverflowError);
}

TEST_CASE("F_p polynomial tools") {
  // 2t^3 + 1 mod 7 is irreducible; mod 5 it has the root 3
  CHECK(fp::is_irreducible(kCubic, 7, 3));
  CHECK_FALSE(fp::is_irreducible(kCubic, 5, 3));
  CHECK(fp::distinct_root_count(kCubic, 5) == 1);
  CHECK(fp::distinct_root_count(kCircle, 13) == 2);
  CHECK(fp::distinct_root_count(Polynomial({0, 1}), 101) == 1);
  CHECK(fp::distinct_root_count(Polynomial({0, 3}), 3) == 3);  // vanishes mod 3
  for (std::uint64_t p = 2; p < 400; ++p) {
    if (!oracle::is_prime_trial(p)) continue;
    CHECK(fp::distinct_root_count(kCubic, p) == oracle::nu_brute({1, 0, 0, 2}, p));
  }
}

TEST_CASE("roots mod primes") {
  CHECK(roots_mod_prime(kCubic, 3).roots == std::vector<std::uint64_t>{1});
  CHECK(roots_mod_prime(kCubic, 2).roots.empty());
  CHECK(roots_mod_prime(kCircle, 2).roots == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(roots_mod_prime(kCubic, 1'000'003), ValidationError);
}

TEST_CASE("roots mod prime powers") {
  CHECK(roots_mod_prime_power(kCubic, 3, 2).roots == oracle::roots_brute({1, 0, 0, 2}, 9));
  CHECK(roots_mod_prime_power(kCircle, 2, 2).roots.empty());
  CHECK(roots_mod_prime_power(kCircle, 5, 1).roots == roots_mod_prime(kCircle, 5).roots);

  // singular roots: t^2 mod p^e and (t - 1)^2 (t + 2) mod 3^e
  const Polynomial square({0, 0, 1});
  const Polynomial singular({2, -3, 0, 1});
  for (int e = 1; e <= 6; ++e) {
    std::uint64_t q2 = 1, q3 = 1;
    for (int i = 0; i < e; ++i) {
      q2 *= 2;
      q3 *= 3;
    }
    CHECK(roots_mod_prime_power(square, 2, e).roots == oracle::roots_brute({0, 0, 1}, q2));
    CHECK(roots_mod_prime_power(singular, 3, e).roots == oracle::roots_brute({2, -3, 0, 1}, q3));
  }
  CHECK_THROWS_AS(roots_mod_prime_power(kCubic, 3, 40), OverflowError);
}

TEST_CASE("nu and CRT gluing") {
  const PrimeSieve sieve(10'000);
  CHECK(nu(kCubic, 1, {}) == 1);
  CHECK(roots_mod(kCubic, 1, Factorization{}).roots == std::vector<std::uint64_t>{0});
  CHECK(nu(kCubic, 15, sieve.factorize(15)) == nu(kCubic, 3, {{3, 1}}) * nu(kCubic, 5, {{5, 1}}));
  CHECK(nu(kCubic, 15, sieve.factorize(15)) == oracle::nu_brute({1, 0, 0, 2}, 15));
  CHECK(nu(kCircle, 65, sieve.factorize(65)) == 4);
  CHECK(roots_mod(kCircle, 65, sieve).roots == oracle::roots_brute({1, 0, 1}, 65));
  CHECK_THROWS_AS(nu(kCubic, 15, {{3, 1}}), ValidationError);
  CHECK_THROWS_AS(nu(kCubic, 15, {{5, 1}, {3, 1}}), ValidationError);
  CHECK_THROWS_AS(nu(kCubic, 16, {{4, 2}}), ValidationError);
}

TEST_CASE("random forms: roots, multiplicativity and the degree bound") {
  const PrimeSieve sieve(20'000);
  oracle::Gen gen(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = gen.form(static_cast<int>(gen.range(1, 5)), 30);
    const Polynomial g(a);
    const std::uint64_t content = static_cast<std::uint64_t>(
        std::accumulate(a.begin(), a.end(), std::int64_t{0},
                        [](std::int64_t x, std::int64_t y) { return std::gcd(x, y); }));
    for (int j = 0; j < 20; ++j) {
      const auto d = static_cast<std::uint64_t>(gen.range(1, 3000));
      const RootSet rs = roots_mod(g, d, sieve);
      CHECK(rs.roots == oracle::roots_brute(a, d));
      CHECK(all_roots_valid(g, rs));
    }
    for (int j = 0; j < 10; ++j) {
      auto d1 = static_cast<std::uint64_t>(gen.range(1, 100));
      auto d2 = static_cast<std::uint64_t>(gen.range(1, 100));
      if (std::gcd(d1, d2) != 1) continue;
      CHECK(nu(g, d1 * d2, sieve.factorize(d1 * d2)) ==
            nu(g, d1, sieve.factorize(d1)) * nu(g, d2, sieve.factorize(d2)));
    }
    for (const std::uint32_t p : sieve.primes()) {
      if (p > 500) break;
      if (content % p == 0) continue;
      CHECK(roots_mod_prime(g, p).count() <= static_cast<std::uint64_t>(g.degree()));
    }
  }
}
