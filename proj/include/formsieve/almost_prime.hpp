#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "formsieve/factor.hpp"
#include "formsieve/forms.hpp"

namespace formsieve {

inline constexpr double kDeltaR = 0.144001;

// floor(3k/4) + 1, the least integer r with r > 3k/4 + delta_r.
// Throws ValidationError for k < 3.
int r_threshold(int k);

struct SieveConstants {
  int k = 3;
  int r = 3;
  double delta_r = kDeltaR;
  // (z, log z * prod_{p < z} (1 - nu(p)/p)), z ascending.
  std::vector<std::pair<double, long double>> c_f_estimates;
};

// log z * prod_{p < z} (1 - nu(p)/p) on an ascending grid of z >= 2, in
// long double. Throws ValidationError when some nu(p) = p.
std::vector<std::pair<double, long double>> singular_series(const BinaryForm& f,
                                                            const std::vector<double>& z_grid);

// k, r_threshold(k) and the singular series on z_grid.
SieveConstants sieve_constants(const BinaryForm& f, const std::vector<double>& z_grid);

// (1/pi(x)) sum_{p <= x} nu(p).
double average_nu(const BinaryForm& f, std::uint64_t x);

struct CensusOptions {
  int r = 3;
  // Tier thresholds N^alpha_exp and N^beta_exp.
  double alpha_exp = 0.1;
  double beta_exp = 0.5;
  unsigned jobs = 1;
  bool keep_records = false;
  FactorOptions factor;
};

/// Omega statistics of f(p, n) over primes p <= N and 0 < n < N.
struct CensusReport {
  std::int64_t big_n = 0;
  int r = 0;
  std::uint64_t pairs = 0;
  std::uint64_t zero_values = 0;  // f(p, n) = 0, skipped
  std::uint64_t timeouts = 0;     // left unfactored and excluded
  std::map<int, std::uint64_t> counts_by_omega;
  std::uint64_t p_r_count = 0;        // Omega(f(p,n)) <= r
  // No prime factor <= N^alpha_exp, and tiered count (primes below
  // N^beta_exp once, larger ones with multiplicity) <= r.
  std::uint64_t tiered_count = 0;
  double normalized_density = 0.0;    // p_r_count log^2 N / N^2
  bool multiply_back_ok = true;

  struct Record {
    std::int64_t p = 0;
    std::int64_t n = 0;
    BigInt value;
    int omega = -1;  // -1 when factorization timed out
  };
  std::vector<Record> records;
};

CensusReport census(const BinaryForm& f, std::int64_t big_n, const CensusOptions& options = {});

}  // namespace formsieve
