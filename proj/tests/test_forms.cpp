#include <doctest.h>

#include "formsieve/errors.hpp"
#include "formsieve/forms.hpp"
#include "oracles.hpp"

using namespace formsieve;

TEST_CASE("evaluate") {
  const BinaryForm f({1, 0, 0, 2});
  CHECK(f.evaluate(1, 1) == 3);
  CHECK(f.evaluate(0, 0) == 0);
  CHECK(f.evaluate(97, 89) == oracle::form_value({1, 0, 0, 2}, 97, 89));
  CHECK(f.evaluate(97, 89) == BigInt(97 * 97 * 97 + 2 * 89 * 89 * 89));
  CHECK(f.evaluate(-3, 2) == BigInt(-27 + 16));

  // far past 64 bits
  const BigInt big("1000000000000");
  CHECK(f.evaluate(big, big) == 3 * big * big * big);
}

TEST_CASE("evaluate_mod agrees with exact values") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen.form(static_cast<int>(gen.range(1, 6)), 50);
    const BinaryForm f(a);
    const long m = gen.range(-1000, 1000), n = gen.range(-1000, 1000);
    const auto d = static_cast<std::uint64_t>(gen.range(1, 1'000'000'007));
    BigInt r = oracle::form_value(a, m, n) % BigInt(static_cast<unsigned long>(d));
    if (r < 0) r += static_cast<unsigned long>(d);
    CHECK(f.evaluate_mod(m, n, d) == r.get_ui());
  }
}

TEST_CASE("numerator identity m^k g(n/m) = f(m,n)") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(gen.range(1, 7));
    const auto a = gen.form(k, 20);
    const BinaryForm f(a);
    const long m = gen.range(1, 300) * (gen.range(0, 1) ? 1 : -1);
    const long n = gen.range(-300, 300);
    mpq_class t(n, m);
    t.canonicalize();
    mpq_class g = 0, tp = 1;
    for (int i = 0; i <= k; ++i) {
      g += mpq_class(static_cast<long>(a[static_cast<std::size_t>(i)])) * tp;
      tp *= t;
    }
    mpz_class mk;
    mpz_ui_pow_ui(mk.get_mpz_t(), static_cast<unsigned long>(std::labs(m)), static_cast<unsigned long>(k));
    if (m < 0 && k % 2 == 1) mk = -mk;
    const mpq_class lhs = g * mpq_class(mk);
    CHECK(lhs == mpq_class(f.evaluate(m, n)));
  }
}

TEST_CASE("dehomogenize") {
  CHECK(BinaryForm({1, 0, 0, 2}).dehomogenize() == Polynomial({1, 0, 0, 2}));
  CHECK(BinaryForm({1, 0, 1}).dehomogenize() == Polynomial({1, 0, 1}));
  CHECK(BinaryForm({2, 1, 1}).dehomogenize() == Polynomial({2, 1, 1}));
  CHECK(BinaryForm({1, 0, 0, 2}).f0() == 2);
  CHECK(BinaryForm({1, 0, 0, 2}).degree() == 3);
}

TEST_CASE("construction and parsing") {
  CHECK(BinaryForm::parse("1,0,0,2") == BinaryForm({1, 0, 0, 2}));
  CHECK(BinaryForm::parse(" 1, -3 ,2") == BinaryForm({1, -3, 2}));
  CHECK_THROWS_AS(BinaryForm::parse("1,,2"), ValidationError);
  CHECK_THROWS_AS(BinaryForm::parse(""), ValidationError);
  CHECK_THROWS_AS(BinaryForm::parse("1,x"), ValidationError);
  CHECK_THROWS_AS(BinaryForm::parse("5"), ValidationError);
  CHECK_THROWS_AS(BinaryForm({0, 3, 0}), ValidationError);
  CHECK(BinaryForm({2, 0, 2}).content() == 2);
  CHECK(BinaryForm({-4, 6, 0, 10}).content() == 2);
}

TEST_CASE("admissibility") {
  const auto cubic = admissibility_check(BinaryForm({1, 0, 0, 2}));
  CHECK(cubic.no_fixed_divisor());
  CHECK(cubic.irreducible_certified());
  CHECK(cubic.irreducible_evidence() == "PASS(7)");

  const auto fixed = admissibility_check(BinaryForm({2, 1, 1}));
  CHECK_FALSE(fixed.no_fixed_divisor());
  REQUIRE(fixed.fixed_divisor_violations.size() == 1);
  CHECK(fixed.fixed_divisor_violations[0] == 2);

  const auto content2 = admissibility_check(BinaryForm({2, 0, 2}));
  CHECK(content2.content == 2);
  CHECK_FALSE(content2.no_fixed_divisor());
  CHECK_THROWS_AS(require_admissible(BinaryForm({2, 0, 2}), true), ValidationError);

  // (x - y)(x + y) is reducible, so no prime can certify it
  const auto reducible = admissibility_check(BinaryForm({-1, 0, 1}));
  CHECK(reducible.no_fixed_divisor());
  CHECK(reducible.irreducible_evidence() == "INCONCLUSIVE");
  CHECK_THROWS_AS(require_admissible(BinaryForm({-1, 0, 1}), false), ValidationError);
  CHECK_NOTHROW(require_admissible(BinaryForm({-1, 0, 1}), true));

  const std::string expected_json =
      R"j({"content":1,"fixed_divisor_violations":[],"irreducible_evidence":"PASS(7)"})j";
  CHECK(cubic.to_json() == expected_json);
}

TEST_CASE("fixed divisor check matches residue brute force") {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = static_cast<int>(gen.range(1, 6));
    const auto a = gen.form(k, 6);
    const BinaryForm f(a);
    const auto report = admissibility_check(f);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(k); ++p) {
      if (!oracle::is_prime_trial(p)) continue;
      // p | f(1, n) for every n mod p
      bool all = true;
      for (long n = 0; n < static_cast<long>(p) && all; ++n) {
        all = oracle::form_divisible(a, 1, n, p);
      }
      if (all) expected.push_back(p);
    }
    if (report.content == 1) {
      CHECK(report.fixed_divisor_violations == expected);
    }
    // a form that passes never has a prime dividing all of its values
    if (report.no_fixed_divisor()) {
      for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(k) + 1; ++p) {
        if (!oracle::is_prime_trial(p)) continue;
        bool all = true;
        for (long n = 0; n < static_cast<long>(p) && all; ++n) {
          all = oracle::form_divisible(a, 1, n, p);
        }
        CHECK_FALSE(all);
      }
    }
  }
}
