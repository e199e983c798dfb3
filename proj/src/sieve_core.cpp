#include "formsieve/sieve_core.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "formsieve/congruence.hpp"
#include "formsieve/errors.hpp"
#include "formsieve/parallel.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {
namespace {

using i128 = __int128;

std::int64_t floor_mod64(i128 v, i128 m) {
  const i128 r = v % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

}  // namespace

Complex psi_direct(const ReducedBasis& lattice, std::int64_t big_n,
                   const CoefficientSequence& alpha, const WeightTable& weights) {
  if (big_n < 1) throw ValidationError("psi: N must be at least 1");
  if (weights.size_n() != big_n) throw ValidationError("psi: weight table built for another N");
  const HermiteBasis h = lattice.hermite();
  Complex acc{};
  for (std::int64_t t = 1; t * h.a <= big_n; ++t) {
    const std::int64_t m = t * h.a;
    const Complex a = alpha[m];
    if (a == Complex{}) continue;
    std::int64_t n = floor_mod64(static_cast<i128>(t) * h.b, h.c);
    if (n == 0) n = h.c;
    double s = 0.0;
    for (; n < big_n; n += h.c) s += weights[n];
    acc += a * s;
  }
  return acc;
}

Complex psi_direct(const ReducedBasis& lattice, std::int64_t big_n,
                   const CoefficientSequence& alpha, const WeightFunction& w) {
  return psi_direct(lattice, big_n, alpha, WeightTable(w, big_n));
}

Complex main_term(std::int64_t det, std::int64_t big_n, const CoefficientSequence& alpha,
                  const WeightFunction& w) {
  if (det < 1) throw ValidationError("main term: determinant must be positive");
  const double scale = static_cast<double>(big_n) * w.hat0() / static_cast<double>(det);
  return scale * alpha.sum(big_n);
}

std::int64_t default_truncation(std::int64_t big_d, std::int64_t big_n, double delta) {
  const double bound = static_cast<double>(big_d) * std::pow(static_cast<double>(big_n), -1.0 + delta);
  return static_cast<std::int64_t>(std::floor(bound));
}

Complex psi_poisson(const ReducedBasis& lattice, std::int64_t big_n,
                    const CoefficientSequence& alpha, const WeightFunction& w,
                    std::int64_t v_max, std::int64_t inverse_shift) {
  const std::int64_t b11 = lattice.b11();
  const std::int64_t b21 = lattice.b21();
  if (b11 < 1) throw ValidationError("psi_poisson: requires B11 >= 1");
  if (std::gcd(b11, b21) != 1) {
    throw ValidationError("psi_poisson: B11 and B21 are not coprime");
  }
  const std::int64_t d = lattice.det;
  const Complex main = main_term(d, big_n, alpha, w);
  if (v_max < 1) return main;

  const auto b21_mod = static_cast<std::uint64_t>(floor_mod64(b21, b11));
  const i128 bbar = static_cast<i128>(inverse_mod(b21_mod, static_cast<std::uint64_t>(b11))) +
                    static_cast<i128>(inverse_shift) * b11;
  const i128 modulus = static_cast<i128>(d) * b11;
  const std::int64_t phase_step = floor_mod64(lattice.b12() + static_cast<i128>(d) * bbar, modulus);

  std::vector<std::int64_t> support;
  for (std::int64_t m = 1; m <= big_n; ++m) {
    if (alpha[m] != Complex{}) support.push_back(m);
  }

  const long double two_pi_over_mod =
      2.0L * std::numbers::pi_v<long double> / static_cast<long double>(modulus);
  Complex dual{};
  for (std::int64_t v = 1; v <= v_max; ++v) {
    const double xi = static_cast<double>(v) * static_cast<double>(big_n) / static_cast<double>(d);
    const Complex hv = w.hat(xi);
    Complex plus{}, minus{};
    for (const std::int64_t m : support) {
      const std::int64_t r = floor_mod64(static_cast<i128>(m) * v % modulus * phase_step, modulus);
      const long double angle = two_pi_over_mod * static_cast<long double>(r);
      const Complex e(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
      plus += alpha[m] * e;
      minus += alpha[m] * std::conj(e);
    }
    // hat W(-xi) = conj(hat W(xi)) for real W.
    dual += hv * plus + std::conj(hv) * minus;
  }
  return main + (static_cast<double>(big_n) / static_cast<double>(d)) * dual;
}

double poisson_tolerance(const ReducedBasis& lattice, std::int64_t big_n,
                         const CoefficientSequence& alpha, const WeightFunction& w,
                         std::int64_t v_max) {
  constexpr std::int64_t kMaxTailTerms = 100000;
  const double d = static_cast<double>(lattice.det);
  double abs_sum = 0.0;
  for (std::int64_t m = 1; m <= big_n; ++m) abs_sum += std::abs(alpha[m]);
  const double floor_err = 2.0 * w.tolerance() * w.hat0();
  double tail = 0.0;
  for (std::int64_t v = std::max<std::int64_t>(v_max, 0) + 1; v <= v_max + kMaxTailTerms; ++v) {
    const double t = std::abs(w.hat(static_cast<double>(v) * static_cast<double>(big_n) / d));
    tail += t;
    if (t < floor_err) break;
  }
  const double retained = static_cast<double>(2 * std::max<std::int64_t>(v_max, 0) + 1);
  const double scale = static_cast<double>(big_n) / d * abs_sum;
  return scale * (2.0 * tail + retained * floor_err) +
         1e-14 * static_cast<double>(big_n) * abs_sum;
}

std::uint64_t farey_count(std::int64_t m1, const BAssignment& b_of, std::int64_t v_bound,
                          Fraction target) {
  if (target.q < 1 || target.a < 0 || target.a >= target.q || std::gcd(target.a, target.q) != 1) {
    throw ValidationError("farey_count: target must be a reduced fraction a/q with 0 <= a < q");
  }
  std::uint64_t count = 0;
  for (std::int64_t b11 = m1; b11 < 2 * m1; ++b11) {
    const std::int64_t b = b_of(b11);
    if (std::gcd(b, b11) != 1) throw ValidationError("farey_count: b not coprime to B11");
    const i128 mod = static_cast<i128>(target.q) * b11;
    const i128 rhs = static_cast<i128>(target.a) * b11 % mod;
    for (std::int64_t v = -v_bound; v <= v_bound; ++v) {
      if (v == 0) continue;
      i128 lhs = static_cast<i128>(target.q) * v % mod * b % mod;
      if (lhs < 0) lhs += mod;
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

std::map<Fraction, std::uint64_t> farey_tally(std::int64_t m1, const BAssignment& b_of,
                                              std::int64_t v_bound) {
  std::map<Fraction, std::uint64_t> out;
  for (std::int64_t b11 = m1; b11 < 2 * m1; ++b11) {
    const std::int64_t b = b_of(b11);
    if (std::gcd(b, b11) != 1) throw ValidationError("farey_tally: b not coprime to B11");
    for (std::int64_t v = -v_bound; v <= v_bound; ++v) {
      if (v == 0) continue;
      const std::int64_t r = floor_mod64(static_cast<i128>(v) * b, b11);
      const std::int64_t g = std::gcd(r, b11);
      ++out[Fraction{r / g, b11 / g}];
    }
  }
  return out;
}

FamilySpec::Flags FamilySpec::verify() const {
  Flags flags;
  std::set<std::int64_t> seen;
  for (const auto& l : lattices) {
    if (l.det < big_d || l.det >= 2 * big_d) flags.det_in_range = false;
    if (l.b11() < m1 || l.b11() >= 2 * m1) flags.b11_in_range = false;
    if (!seen.insert(l.b11()).second) flags.distinct_b11 = false;
    if (l.b11() < 1 || std::gcd(l.b11(), l.b21()) != 1) flags.coprime_m = false;
  }
  return flags;
}

FamilySpec build_family(const BinaryForm& f, std::int64_t big_n, std::int64_t big_d,
                        std::int64_t m1, double delta) {
  if (big_d < 1 || m1 < 1) throw ValidationError("family: D and M1 must be at least 1");
  FamilySpec spec;
  spec.big_n = big_n;
  spec.big_d = big_d;
  spec.m1 = m1;
  spec.delta = delta;
  const PrimeSieve sieve(static_cast<std::uint64_t>(2 * big_d));
  const Polynomial g = f.dehomogenize();
  std::set<std::int64_t> used;
  for (std::int64_t d = big_d; d < 2 * big_d; ++d) {
    const auto ud = static_cast<std::uint64_t>(d);
    for (const auto& cls : enumerate_classes(f, ud, roots_mod(g, ud, sieve))) {
      const std::int64_t b11 = cls.basis.b11();
      if (b11 < m1 || b11 >= 2 * m1 || used.count(b11)) continue;
      used.insert(b11);
      spec.lattices.push_back(cls.basis);
    }
  }
  return spec;
}

std::string to_string(BoundCase c) {
  switch (c) {
    case BoundCase::kSmallModulus:
      return "small_modulus";
    case BoundCase::kLargeSieve:
      return "large_sieve";
    case BoundCase::kOutOfRange:
      return "out_of_range";
  }
  return "unknown";
}

BoundCase classify_bound_case(std::int64_t big_n, std::int64_t big_d, std::int64_t m1,
                              double delta) {
  const double x = std::pow(static_cast<double>(big_n), 1.0 - delta);
  const auto dd = static_cast<double>(big_d);
  if (dd <= x) return BoundCase::kSmallModulus;
  if (dd < static_cast<double>(m1) * x) return BoundCase::kLargeSieve;
  return BoundCase::kOutOfRange;
}

FamilyReport family_discrepancy(const FamilySpec& spec, const CoefficientSequence& alpha,
                                const WeightFunction& w, unsigned jobs) {
  const FamilySpec::Flags flags = spec.verify();
  if (!flags.all()) {
    std::string failed;
    if (!flags.det_in_range) failed += " det~D";
    if (!flags.b11_in_range) failed += " B11~M1";
    if (!flags.distinct_b11) failed += " distinct-B11";
    if (!flags.coprime_m) failed += " coprime-m";
    throw HypothesisError("family hypotheses violated:" + failed);
  }
  const WeightTable table(w, spec.big_n);
  const auto records = ordered_map(spec.lattices.size(), jobs, [&](std::size_t i) {
    const ReducedBasis& l = spec.lattices[i];
    FamilyReport::Record r;
    r.id = i;
    r.b11 = l.b11();
    r.det = l.det;
    r.psi = psi_direct(l, spec.big_n, alpha, table);
    r.main = main_term(l.det, spec.big_n, alpha, w);
    r.abs_err = std::abs(r.psi - r.main);
    return r;
  });
  FamilyReport report;
  report.records = records;
  for (const auto& r : report.records) {
    report.total_error += r.abs_err;
    report.trivial_bound += std::abs(r.main);
  }
  report.bound_shape = static_cast<double>(spec.big_n) *
                       std::sqrt(static_cast<double>(spec.big_d) / static_cast<double>(spec.m1));
  report.bound_case = classify_bound_case(spec.big_n, spec.big_d, spec.m1, spec.delta);
  return report;
}

}  // namespace formsieve
