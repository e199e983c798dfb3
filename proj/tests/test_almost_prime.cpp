#include <doctest.h>

#include <cmath>

#include "formsieve/almost_prime.hpp"
#include "formsieve/errors.hpp"
#include "formsieve/factor.hpp"
#include "oracles.hpp"

using namespace formsieve;

namespace {

const BinaryForm kCubic({1, 0, 0, 2});
const oracle::Coeffs kCubicCoeffs{1, 0, 0, 2};
constexpr double kEulerGamma = 0.57721566490153286;

}  // namespace

TEST_CASE("r_threshold") {
  CHECK(r_threshold(3) == 3);
  CHECK(r_threshold(4) == 4);
  CHECK(r_threshold(8) == 7);
  for (int k = 3; k <= 40; ++k) {
    const int r = r_threshold(k);
    CHECK(r > 0.75 * k + kDeltaR);
    CHECK_FALSE(r - 1 > 0.75 * k + kDeltaR);
  }
  CHECK_THROWS_AS(r_threshold(2), ValidationError);
}

TEST_CASE("factor") {
  const auto twelve = factor(BigInt(12));
  CHECK(twelve.omega_total() == 3);
  CHECK(twelve.omega_distinct() == 2);
  CHECK(factor(BigInt(1)).omega_total() == 0);
  CHECK(factor(BigInt(-1)).factors.empty());
  CHECK_THROWS_AS(factor(BigInt(0)), ValidationError);

  const BigInt v = kCubic.evaluate(97, 89);
  const auto fv = factor(v);
  CHECK(fv.product() == abs(v));
  CHECK(fv.omega_total() == oracle::omega_brute(v));

  // two primes above the trial division bound
  const BigInt semi = BigInt(1'000'003) * BigInt(1'000'033);
  const auto fs = factor(semi);
  REQUIRE(fs.factors.size() == 2);
  CHECK(fs.factors[0].prime == 1'000'003);
  CHECK(fs.factors[1].prime == 1'000'033);

  oracle::Gen gen(9);
  for (int trial = 0; trial < 200; ++trial) {
    const BigInt a(static_cast<long>(gen.range(2, 2'000'000)));
    const BigInt b(static_cast<long>(gen.range(2, 2'000'000)));
    const auto fa = factor(a), fb = factor(b), fab = factor(a * b);
    CHECK(fab.omega_total() == fa.omega_total() + fb.omega_total());
    CHECK(fab.product() == a * b);
    CHECK(fa.omega_total() == oracle::omega_brute(a));
  }

  const auto t = factor(BigInt(2 * 2 * 3 * 101 * 101)).tiered(2.5, 50.0);
  CHECK_FALSE(t.all_above_small);
  CHECK(t.count == 2 + 2);
}

TEST_CASE("census") {
  CensusOptions opt;
  opt.keep_records = true;
  const auto r = census(kCubic, 50, opt);
  CHECK(r.p_r_count > 0);
  CHECK(r.multiply_back_ok);
  CHECK(r.timeouts == 0);
  std::uint64_t total = 0;
  for (const auto& [omega, c] : r.counts_by_omega) total += c;
  CHECK(total + r.zero_values + r.timeouts == r.pairs);
  CHECK(r.pairs == oracle::prime_pi(50) * 49);
  std::uint64_t p3 = 0;
  for (const auto& rec : r.records) {
    CHECK(oracle::is_prime_trial(static_cast<std::uint64_t>(rec.p)));
    CHECK(rec.value == oracle::form_value(kCubicCoeffs, rec.p, rec.n));
    const int om = oracle::omega_brute(rec.value);
    CHECK(rec.omega == om);
    p3 += om <= 3 ? 1 : 0;
  }
  CHECK(p3 == r.p_r_count);
  CHECK(r.tiered_count <= r.pairs);

  const auto empty = census(kCubic, 1);
  CHECK(empty.pairs == 0);
  CHECK(empty.p_r_count == 0);

  // monotone in r and N
  std::uint64_t prev = 0;
  for (int rr = 1; rr <= 6; ++rr) {
    CensusOptions o;
    o.r = rr;
    const auto c = census(kCubic, 40, o);
    CHECK(c.p_r_count >= prev);
    prev = c.p_r_count;
  }
  CensusOptions big;
  big.r = 1000;
  const auto all = census(kCubic, 40, big);
  CHECK(all.p_r_count == all.pairs - all.zero_values);
  CHECK(census(kCubic, 80).p_r_count >= census(kCubic, 40).p_r_count);

  CensusOptions par = opt;
  par.jobs = 3;
  const auto rp = census(kCubic, 50, par);
  CHECK(rp.counts_by_omega == r.counts_by_omega);
  CHECK(rp.tiered_count == r.tiered_count);
}

TEST_CASE("singular series") {
  // nu = 1 everywhere: Mertens
  const BinaryForm linear({0, 1});
  const auto mertens = singular_series(linear, {2.0, 1e6});
  CHECK(static_cast<double>(mertens[0].second) == doctest::Approx(std::log(2.0)));  // empty product
  CHECK(std::abs(static_cast<double>(mertens[1].second) - std::exp(-kEulerGamma)) / std::exp(-kEulerGamma) < 0.01);

  const auto cubic = singular_series(kCubic, {1e5, 1e6});
  const double a = static_cast<double>(cubic[0].second), b = static_cast<double>(cubic[1].second);
  CHECK(std::abs(b - a) / std::abs(a) < 0.1);

  CHECK_THROWS_AS(singular_series(kCubic, {1.0}), ValidationError);
  CHECK_THROWS_AS(singular_series(kCubic, {100.0, 10.0}), ValidationError);
  // x^2 + xy = x(x + y) vanishes identically mod 2
  CHECK_THROWS_AS(singular_series(BinaryForm({0, 1, 1}), {10.0}), ValidationError);

  const auto consts = sieve_constants(kCubic, {10.0, 100.0});
  CHECK(consts.k == 3);
  CHECK(consts.r == 3);
  CHECK(consts.c_f_estimates.size() == 2);
}

TEST_CASE("average nu") {
  const double avg = average_nu(kCubic, 100'000);
  CHECK(avg > 0.8);
  CHECK(avg < 1.2);
  CHECK(average_nu(BinaryForm({0, 1}), 1000) == doctest::Approx(1.0));
}
