#include <doctest.h>

#include <cmath>

#include "formsieve/distribution.hpp"
#include "formsieve/errors.hpp"
#include "formsieve/primes.hpp"
#include "oracles.hpp"

using namespace formsieve;

namespace {

const BinaryForm kCubic({1, 0, 0, 2});
const oracle::Coeffs kCubicCoeffs{1, 0, 0, 2};

double cabs(Complex z) { return std::abs(z); }

}  // namespace

TEST_CASE("a_d against the double loop") {
  const WeightFunction w = WeightFunction::bump();
  const std::int64_t big_n = 60;
  const WeightTable table(w, big_n);
  const auto chi = CoefficientSequence::primes(big_n);
  const auto ones = CoefficientSequence::ones(big_n);
  const PrimeSieve sieve(1000);
  for (std::uint64_t d = 1; d <= 150; ++d) {
    const RootSet roots = roots_mod(kCubic.dehomogenize(), d, sieve);
    for (const auto* alpha : {&chi, &ones}) {
      const Complex got = a_d(kCubic, d, big_n, *alpha, table, roots);
      const Complex want = oracle::a_d_brute(kCubicCoeffs, d, big_n, *alpha, table);
      CHECK(cabs(got - want) <= 1e-9 * std::max(1.0, cabs(want)));
    }
  }
  // d = 1 sums every weight
  const RootSet one = roots_mod(kCubic.dehomogenize(), 1, sieve);
  double s = 0.0;
  for (std::int64_t n = 1; n < big_n; ++n) s += table[n];
  CHECK(a_d(kCubic, 1, big_n, ones, table, one).real() == doctest::Approx(60 * s).epsilon(1e-12));
}

TEST_CASE("m_d examples") {
  const WeightFunction w = WeightFunction::bump();
  const auto ones = CoefficientSequence::ones(12);
  // N nu hat W(0) / d * 12 with N = 12, nu = 1, d = 1
  CHECK(m_d(1, 1, 12, ones, w).real() == doctest::Approx(12.0 * w.hat0() * 12.0));
  CHECK(m_d(17, 2, 12, ones, w).real() == doctest::Approx(12.0 * 2.0 * w.hat0() * 12.0 / 17.0));
  CHECK(m_d(5, 0, 12, ones, w) == Complex{});
}

TEST_CASE("zero coefficients give zero error") {
  const WeightFunction w = WeightFunction::bump();
  const auto zero = CoefficientSequence::zeros(64);
  const auto r = lod_experiment(kCubic, 64, 1.0, zero, w);
  CHECK(r.total_error == 0.0);
  CHECK(r.normalized_error() == 0.0);
  CHECK(r.records.size() == 64);
}

TEST_CASE("lod records") {
  const WeightFunction w = WeightFunction::bump();
  const auto chi = CoefficientSequence::primes(100);
  // theta = 0 gives D = 1 and the single modulus d = 1
  const auto one = lod_experiment(kCubic, 100, 0.0, chi, w);
  REQUIRE(one.records.size() == 1);
  CHECK(one.big_d == 1);
  CHECK(one.records[0].d == 1);
  CHECK(one.records[0].nu == 1);

  const auto r = lod_experiment(kCubic, 100, 1.0, chi, w);
  CHECK(r.big_d == 100);
  CHECK(r.records.size() == 100);
  double total = 0.0, trivial = 0.0;
  for (const auto& rec : r.records) {
    CHECK(rec.d >= 100);
    CHECK(rec.d < 200);
    CHECK(rec.abs_err == doctest::Approx(cabs(rec.a - rec.m)));
    total += rec.abs_err;
    trivial += cabs(rec.m);
  }
  CHECK(r.total_error == doctest::Approx(total));
  CHECK(r.trivial_scale == doctest::Approx(trivial));
  CHECK(r.in_theorem_regime);
  CHECK_FALSE(lod_experiment(kCubic, 10, 1.4, chi, w).in_theorem_regime);

  CHECK(modulus_scale(1000, 1.0) == 1000);
  CHECK(modulus_scale(8, 1.0 / 3.0) == 2);
  CHECK_THROWS_AS(lod_experiment(kCubic, 100, 1.0, chi, w, LodOptions{.work_limit = 1000}),
                  WorkLimitError);
}

TEST_CASE("lod is deterministic across job counts") {
  const WeightFunction w = WeightFunction::bump();
  const auto chi = CoefficientSequence::primes(128);
  LodOptions serial;
  serial.split_b11 = true;
  LodOptions parallel = serial;
  parallel.jobs = 4;
  const auto a = lod_experiment(kCubic, 128, 1.1, chi, w, serial);
  const auto b = lod_experiment(kCubic, 128, 1.1, chi, w, parallel);
  CHECK(a.total_error == b.total_error);
  CHECK(a.trivial_scale == b.trivial_scale);
  REQUIRE(a.split.has_value());
  REQUIRE(b.split.has_value());
  CHECK(a.split->small_error == b.split->small_error);
  CHECK(a.split->small_classes + a.split->large_classes == b.split->small_classes + b.split->large_classes);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].a == b.records[i].a);
}

TEST_CASE("lattice decomposition reconstructs A_d") {
  const WeightFunction w = WeightFunction::bump();
  const std::int64_t big_n = 80;
  const WeightTable table(w, big_n);
  const auto chi = CoefficientSequence::primes(big_n);
  const PrimeSieve sieve(1000);
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const RootSet roots = roots_mod(kCubic.dehomogenize(), d, sieve);
    const auto dec = decompose_a_d(kCubic, d, big_n, chi, table, roots);
    const Complex direct = a_d(kCubic, d, big_n, chi, table, roots);
    CHECK(cabs(dec.reconstructed() - direct) <= 1e-9 * std::max(1.0, cabs(direct)));
  }
}

TEST_CASE("gcd contribution against a triple loop") {
  const WeightFunction w = WeightFunction::bump();
  const std::int64_t big_n = 60, big_d = 8;
  const WeightTable table(w, big_n);
  const auto chi = CoefficientSequence::primes(big_n);
  double want = 0.0;
  for (std::int64_t d = big_d; d < 2 * big_d; ++d) {
    for (std::int64_t m = 1; m <= big_n; ++m) {
      if (std::gcd(m, d) == 1) continue;
      for (std::int64_t n = 1; n < big_n; ++n) {
        if (oracle::form_divisible(kCubicCoeffs, m, n, static_cast<std::uint64_t>(d))) {
          want += std::abs(chi[m]) * table[n];
        }
      }
    }
  }
  CHECK(gcd_contribution(kCubic, big_n, big_d, chi, w) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(gcd_contribution(kCubic, big_n, big_d, CoefficientSequence::ones(big_n), w),
                  ValidationError);
}

TEST_CASE("prime square sum against brute force") {
  const WeightFunction w = WeightFunction::bump();
  const std::int64_t big_n = 50;
  const double delta1 = 0.4;
  const WeightTable table(w, big_n);
  const auto chi = CoefficientSequence::primes(big_n);
  const double lo = std::pow(50.0, delta1), hi = std::pow(50.0, 2.0 - delta1);
  double want = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(hi); ++p) {
    if (!oracle::is_prime_trial(p) || static_cast<double>(p) < lo) continue;
    ++count;
    want += std::abs(oracle::a_d_brute(kCubicCoeffs, p * p, big_n, chi, table));
  }
  const auto got = prime_square_sum(kCubic, big_n, delta1, chi, w);
  CHECK(got.primes == count);
  CHECK(got.sum == doctest::Approx(want).epsilon(1e-10));
  CHECK(got.normalized == doctest::Approx(want / 2500.0).epsilon(1e-10));

  const auto empty = prime_square_sum(kCubic, big_n, 1.2, chi, w);
  CHECK(empty.primes == 0);
  CHECK(empty.sum == 0.0);
}
