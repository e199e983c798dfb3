#include "formsieve/distribution.hpp"

#include <cmath>
#include <numeric>

#include "formsieve/errors.hpp"
#include "formsieve/lattice.hpp"
#include "formsieve/parallel.hpp"
#include "formsieve/primes.hpp"
#include "formsieve/sieve_core.hpp"

namespace formsieve {
namespace {

void check_weights(const WeightTable& weights, std::int64_t big_n) {
  if (big_n < 1) throw ValidationError("N must be at least 1");
  if (weights.size_n() != big_n) throw ValidationError("weight table built for another N");
}

void check_work(std::uint64_t work, std::uint64_t limit, const char* what) {
  if (work > limit) {
    throw WorkLimitError(std::string(what) + ": estimated " + std::to_string(work) +
                         " inner operations exceed the work limit " + std::to_string(limit));
  }
}

}  // namespace

ADParts a_d_parts(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
                  const CoefficientSequence& alpha, const WeightTable& weights,
                  const RootSet& roots) {
  check_weights(weights, big_n);
  if (roots.modulus != d) throw ValidationError("a_d: root set modulus does not match d");
  ADParts out;
  const auto dd = static_cast<std::int64_t>(d);
  for (std::int64_t m = 1; m <= big_n; ++m) {
    const Complex a = alpha[m];
    if (a == Complex{}) continue;
    if (std::gcd(static_cast<std::uint64_t>(m), d) == 1) {
      double s = 0.0;
      for (const std::uint64_t rho : roots.roots) {
        auto n = static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(m) % d, rho, d));
        if (n == 0) n = dd;
        for (; n < big_n; n += dd) s += weights[n];
      }
      out.coprime += a * s;
    } else {
      double s = 0.0;
      for (std::int64_t n = 1; n < big_n; ++n) {
        if (f.evaluate_mod(m, n, d) == 0) s += weights[n];
      }
      out.gcd_part += a * s;
    }
  }
  return out;
}

Complex a_d(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
            const CoefficientSequence& alpha, const WeightTable& weights, const RootSet& roots) {
  return a_d_parts(f, d, big_n, alpha, weights, roots).total();
}

Complex m_d(std::uint64_t d, std::uint64_t nu_d, std::int64_t big_n,
            const CoefficientSequence& alpha, const WeightFunction& w) {
  const double scale = static_cast<double>(big_n) * static_cast<double>(nu_d) * w.hat0() /
                       static_cast<double>(d);
  return scale * alpha.sum(big_n);
}

LatticeDecomposition decompose_a_d(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
                                   const CoefficientSequence& alpha,
                                   const WeightTable& weights, const RootSet& roots) {
  LatticeDecomposition out;
  const auto classes = enumerate_classes(f, d, roots);
  for (const auto& cls : classes) out.sum_psi += psi_direct(cls.basis, big_n, alpha, weights);
  out.gcd_part = a_d_parts(f, d, big_n, alpha, weights, roots).gcd_part;
  for (std::int64_t m = 1; m <= big_n; ++m) {
    const Complex a = alpha[m];
    if (a == Complex{} || std::gcd(static_cast<std::uint64_t>(m), d) == 1) continue;
    double s = 0.0;
    for (std::int64_t n = 1; n < big_n; ++n) {
      for (const auto& cls : classes) {
        if (cls.basis.contains({m, n})) s += weights[n];
      }
    }
    out.multiplicity += a * s;
  }
  return out;
}

std::int64_t modulus_scale(std::int64_t big_n, double theta) {
  const double x = std::pow(static_cast<double>(big_n), theta);
  return static_cast<std::int64_t>(std::floor(x * (1.0 + 1e-12)));
}

DiscrepancyReport lod_experiment(const BinaryForm& f, std::int64_t big_n, double theta,
                                 const CoefficientSequence& alpha, const WeightFunction& w,
                                 const LodOptions& options) {
  if (big_n < 2) throw ValidationError("lod: N must be at least 2");
  DiscrepancyReport report;
  report.big_n = big_n;
  report.theta_requested = theta;
  report.big_d = options.explicit_d ? *options.explicit_d : modulus_scale(big_n, theta);
  if (report.big_d < 1) throw ValidationError("lod: D = floor(N^theta) must be at least 1");
  report.theta = std::log(static_cast<double>(report.big_d)) / std::log(static_cast<double>(big_n));
  report.in_theorem_regime = report.theta <= 4.0 / 3.0;
  check_work(static_cast<std::uint64_t>(report.big_d) * static_cast<std::uint64_t>(big_n),
             options.work_limit, "lod");

  const std::int64_t big_d = report.big_d;
  const PrimeSieve sieve(static_cast<std::uint64_t>(2 * big_d));
  const WeightTable table(w, big_n);
  const Polynomial g = f.dehomogenize();
  const Complex alpha_sum = alpha.sum(big_n);
  const double threshold = std::pow(static_cast<double>(big_d), 0.5 - options.eta);

  struct PerD {
    DiscrepancyReport::Record record;
    DiscrepancyReport::Split split;
  };
  const auto count = static_cast<std::size_t>(big_d);
  const auto rows = ordered_map(count, options.jobs, [&](std::size_t i) {
    PerD out;
    const auto d = static_cast<std::uint64_t>(big_d) + i;
    const RootSet roots = roots_mod(g, d, sieve);
    const ADParts parts = a_d_parts(f, d, big_n, alpha, table, roots);
    auto& r = out.record;
    r.d = d;
    r.nu = roots.count();
    r.a = parts.total();
    r.m = m_d(d, r.nu, big_n, alpha, w);
    r.gcd_part = parts.gcd_part;
    r.abs_err = std::abs(r.a - r.m);
    if (options.split_b11) {
      const Complex main_x =
          (static_cast<double>(big_n) * w.hat0() / static_cast<double>(d)) * alpha_sum;
      for (const auto& cls : enumerate_classes(f, d, roots)) {
        const double err = std::abs(psi_direct(cls.basis, big_n, alpha, table) - main_x);
        if (static_cast<double>(cls.basis.b11()) <= threshold) {
          const BoxCount box = count_points_in_box(cls.basis, big_n);
          ++out.split.small_classes;
          out.split.s1_points += box.count;
          out.split.s1_estimate += box.estimate();
          out.split.small_error += err;
        } else {
          ++out.split.large_classes;
          out.split.large_error += err;
        }
      }
    }
    return out;
  });

  DiscrepancyReport::Split split;
  split.eta = options.eta;
  split.threshold = threshold;
  report.records.reserve(rows.size());
  for (const auto& row : rows) {
    report.records.push_back(row.record);
    report.total_error += row.record.abs_err;
    report.trivial_scale += std::abs(row.record.m);
    report.gcd_correction += std::abs(row.record.gcd_part);
    split.small_classes += row.split.small_classes;
    split.large_classes += row.split.large_classes;
    split.s1_points += row.split.s1_points;
    split.s1_estimate += row.split.s1_estimate;
    split.small_error += row.split.small_error;
    split.large_error += row.split.large_error;
  }
  if (options.split_b11) {
    split.s2 = static_cast<double>(big_n) * static_cast<double>(big_n) /
               static_cast<double>(big_d) * static_cast<double>(split.small_classes);
    report.split = split;
  }
  return report;
}

double gcd_contribution(const BinaryForm& f, std::int64_t big_n, std::int64_t big_d,
                        const CoefficientSequence& alpha, const WeightFunction& w) {
  if (big_d < 1) throw ValidationError("gcd_contribution: D must be at least 1");
  if (!alpha.prime_supported()) {
    throw ValidationError("gcd_contribution: alpha must be supported on primes");
  }
  const WeightTable table(w, big_n);
  const PrimeSieve sieve(static_cast<std::uint64_t>(2 * big_d));
  double total = 0.0;
  for (std::int64_t d = big_d; d < 2 * big_d; ++d) {
    for (const auto& [p, e] : sieve.factorize(static_cast<std::uint64_t>(d))) {
      const auto m = static_cast<std::int64_t>(p);
      if (m > big_n) break;
      const double a = std::abs(alpha[m]);
      if (a == 0.0) continue;
      double s = 0.0;
      for (std::int64_t n = 1; n < big_n; ++n) {
        if (f.evaluate_mod(m, n, static_cast<std::uint64_t>(d)) == 0) s += table[n];
      }
      total += a * s;
    }
  }
  return total;
}

PrimeSquareResult prime_square_sum(const BinaryForm& f, std::int64_t big_n, double delta1,
                                   const CoefficientSequence& alpha, const WeightFunction& w,
                                   std::uint64_t work_limit) {
  if (!(delta1 > 0.0)) throw ValidationError("prime_square_sum: delta1 must be positive");
  PrimeSquareResult out;
  const double nn = static_cast<double>(big_n);
  const double lo = std::pow(nn, delta1);
  const double hi = std::pow(nn, 2.0 - delta1);
  if (lo > hi) return out;
  const auto p_hi = static_cast<std::uint64_t>(std::floor(hi * (1.0 + 1e-12)));
  if (p_hi >= (std::uint64_t{1} << 31)) {
    throw OverflowError("prime_square_sum: p^2 exceeds the 64-bit congruence bound");
  }
  check_work(p_hi * static_cast<std::uint64_t>(big_n), work_limit, "prime-square");
  const auto p_lo = static_cast<std::uint64_t>(std::ceil(lo * (1.0 - 1e-12)));
  const PrimeSieve sieve(std::max<std::uint64_t>(p_hi, 2));
  const WeightTable table(w, big_n);
  const Polynomial g = f.dehomogenize();
  for (const std::uint64_t p : sieve.primes()) {
    if (p < p_lo) continue;
    if (p > p_hi) break;
    const RootSet roots = roots_mod_prime_power(g, p, 2);
    out.sum += std::abs(a_d(f, p * p, big_n, alpha, table, roots));
    ++out.primes;
  }
  out.normalized = out.sum / (nn * nn);
  return out;
}

}  // namespace formsieve
