#include "formsieve/almost_prime.hpp"

#include <cmath>

#include "formsieve/errors.hpp"
#include "formsieve/parallel.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {

int r_threshold(int k) {
  if (k < 3) throw ValidationError("r_threshold: degree must be at least 3");
  const int r = 3 * k / 4 + 1;
  // Least r with r > 3k/4 + delta_r, i.e. 20r > 15k + 20 delta_r.
  if (!(20.0 * r > 15.0 * k + 20.0 * kDeltaR) || !(20.0 * (r - 1) <= 15.0 * k + 20.0 * kDeltaR)) {
    throw std::logic_error("r_threshold: floor formula disagrees with the defining inequality");
  }
  return r;
}

std::vector<std::pair<double, long double>> singular_series(const BinaryForm& f,
                                                            const std::vector<double>& z_grid) {
  std::vector<std::pair<double, long double>> out;
  if (z_grid.empty()) return out;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (!(z_grid[i] >= 2.0)) throw ValidationError("singular_series: z must be at least 2");
    if (i > 0 && !(z_grid[i] > z_grid[i - 1])) {
      throw ValidationError("singular_series: z grid must be strictly increasing");
    }
  }
  if (z_grid.back() > 4e9) throw ValidationError("singular_series: z too large for the sieve");
  const auto z_max = static_cast<std::uint64_t>(std::ceil(z_grid.back()));
  const PrimeSieve sieve(z_max);
  const Polynomial g = f.dehomogenize();
  long double product = 1.0L;
  std::size_t next = 0;
  auto emit_until = [&](double bound) {
    // Emit every z with all primes < z already multiplied in.
    while (next < z_grid.size() && z_grid[next] <= bound) {
      out.emplace_back(z_grid[next], std::log(static_cast<long double>(z_grid[next])) * product);
      ++next;
    }
  };
  for (const std::uint32_t p : sieve.primes()) {
    emit_until(static_cast<double>(p));
    if (next == z_grid.size()) break;
    const std::uint64_t v = fp::distinct_root_count(g, p);
    if (v >= p) {
      throw ValidationError("singular_series: nu(" + std::to_string(p) + ") = " +
                            std::to_string(p) + ", the product vanishes");
    }
    product *= 1.0L - static_cast<long double>(v) / static_cast<long double>(p);
  }
  emit_until(HUGE_VAL);
  return out;
}

SieveConstants sieve_constants(const BinaryForm& f, const std::vector<double>& z_grid) {
  SieveConstants c;
  c.k = f.degree();
  c.r = r_threshold(c.k);
  c.c_f_estimates = singular_series(f, z_grid);
  return c;
}

double average_nu(const BinaryForm& f, std::uint64_t x) {
  if (x < 2) throw ValidationError("average_nu: x must be at least 2");
  const PrimeSieve sieve(x);
  const Polynomial g = f.dehomogenize();
  std::uint64_t total = 0;
  for (const std::uint32_t p : sieve.primes()) total += fp::distinct_root_count(g, p);
  return static_cast<double>(total) / static_cast<double>(sieve.primes().size());
}

CensusReport census(const BinaryForm& f, std::int64_t big_n, const CensusOptions& options) {
  if (options.r < 1) throw ValidationError("census: r must be at least 1");
  if (big_n < 0) throw ValidationError("census: N must be nonnegative");
  CensusReport report;
  report.big_n = big_n;
  report.r = options.r;
  if (big_n < 2) return report;

  const PrimeSieve sieve(static_cast<std::uint64_t>(big_n));
  const auto& primes = sieve.primes();
  const double nn = static_cast<double>(big_n);
  const double small_bound = std::pow(nn, options.alpha_exp);
  const double large_bound = std::pow(nn, options.beta_exp);

  struct Row {
    CensusReport tally;
  };
  const auto rows = ordered_map(primes.size(), options.jobs, [&](std::size_t i) {
    Row row;
    auto& t = row.tally;
    const std::int64_t p = primes[i];
    for (std::int64_t n = 1; n < big_n; ++n) {
      ++t.pairs;
      const BigInt value = f.evaluate(p, n);
      if (value == 0) {
        ++t.zero_values;
        continue;
      }
      int omega = -1;
      try {
        const FactoredValue fv = factor(value, options.factor);
        if (fv.product() != abs(value)) t.multiply_back_ok = false;
        omega = fv.omega_total();
        ++t.counts_by_omega[omega];
        if (omega <= options.r) ++t.p_r_count;
        const auto tier = fv.tiered(small_bound, large_bound);
        if (tier.all_above_small && tier.count <= options.r) ++t.tiered_count;
      } catch (const FactorTimeout&) {
        ++t.timeouts;
      }
      if (options.keep_records) t.records.push_back({p, n, value, omega});
    }
    return row;
  });

  for (const auto& row : rows) {
    const auto& t = row.tally;
    report.pairs += t.pairs;
    report.zero_values += t.zero_values;
    report.timeouts += t.timeouts;
    for (const auto& [omega, count] : t.counts_by_omega) report.counts_by_omega[omega] += count;
    report.p_r_count += t.p_r_count;
    report.tiered_count += t.tiered_count;
    report.multiply_back_ok = report.multiply_back_ok && t.multiply_back_ok;
    report.records.insert(report.records.end(), t.records.begin(), t.records.end());
  }
  const double log_n = std::log(nn);
  report.normalized_density = static_cast<double>(report.p_r_count) * log_n * log_n / (nn * nn);
  return report;
}

}  // namespace formsieve
