#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "formsieve/congruence.hpp"
#include "formsieve/forms.hpp"
#include "formsieve/weight.hpp"

namespace formsieve {

inline constexpr std::uint64_t kDefaultWorkLimit = 1'000'000'000;

// Parts of A_d(N, alpha) = sum over (m, n) in (0, N] x Z with
// f(m, n) == 0 (mod d) of alpha_m W(n/N).
struct ADParts {
  Complex coprime;    // (m; d) = 1, via n == m rho (mod d)
  Complex gcd_part;   // (m; d) > 1, by direct divisibility tests

  [[nodiscard]] Complex total() const { return coprime + gcd_part; }
};

ADParts a_d_parts(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
                  const CoefficientSequence& alpha, const WeightTable& weights,
                  const RootSet& roots);
Complex a_d(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
            const CoefficientSequence& alpha, const WeightTable& weights, const RootSet& roots);

// M_d(N, alpha) = N nu(d) hat W(0) / d * sum_{m <= N} alpha_m.
Complex m_d(std::uint64_t d, std::uint64_t nu_d, std::int64_t big_n,
            const CoefficientSequence& alpha, const WeightFunction& w);

/// A_d rewritten through the class lattices of U'(d):
///   A_d = sum_x psi(lambda(x)) + gcd_part - multiplicity,
/// where multiplicity counts each point with (m; d) > 1 once per lattice
/// lambda(x), x in U'(d), containing it.
struct LatticeDecomposition {
  Complex sum_psi;
  Complex gcd_part;
  Complex multiplicity;

  [[nodiscard]] Complex reconstructed() const { return sum_psi + gcd_part - multiplicity; }
};

LatticeDecomposition decompose_a_d(const BinaryForm& f, std::uint64_t d, std::int64_t big_n,
                                   const CoefficientSequence& alpha,
                                   const WeightTable& weights, const RootSet& roots);

struct LodOptions {
  bool split_b11 = false;
  double eta = 0.05;
  unsigned jobs = 1;
  std::uint64_t work_limit = kDefaultWorkLimit;
  // Use this D instead of floor(N^theta).
  std::optional<std::int64_t> explicit_d;
};

/// Per-d records and aggregates of sum_{d ~ D} |A_d - M_d|, d ~ D meaning
/// D <= d < 2D.
struct DiscrepancyReport {
  std::int64_t big_n = 0;
  std::int64_t big_d = 0;
  double theta_requested = 0.0;
  double theta = 0.0;  // log D / log N
  bool in_theorem_regime = true;  // theta <= 4/3

  struct Record {
    std::uint64_t d = 0;
    std::uint64_t nu = 0;
    Complex a;
    Complex m;
    Complex gcd_part;
    double abs_err = 0.0;
  };
  std::vector<Record> records;

  double total_error = 0.0;
  double trivial_scale = 0.0;  // sum |M_d|
  double gcd_correction = 0.0;  // sum |(m;d) > 1 part|
  [[nodiscard]] double normalized_error() const {
    return trivial_scale > 0.0 ? total_error / trivial_scale : 0.0;
  }

  // Lattices of U'(d) with B11 <= D^{1/2 - eta} against the rest.
  struct Split {
    double eta = 0.0;
    double threshold = 0.0;
    std::uint64_t small_classes = 0;
    std::uint64_t large_classes = 0;
    std::uint64_t s1_points = 0;   // sum #(lambda(x) cap [0,N]^2) over small classes
    double s1_estimate = 0.0;      // same with N^2/d + N/|B1| + 1
    double s2 = 0.0;               // N^2/D * small_classes
    double small_error = 0.0;      // sum |psi - N hat W(0)/d sum alpha|, small classes
    double large_error = 0.0;      // the same over the rest
  };
  std::optional<Split> split;
};

// Throws ValidationError when D < 1, WorkLimitError when D*N exceeds the
// work limit.
DiscrepancyReport lod_experiment(const BinaryForm& f, std::int64_t big_n, double theta,
                                 const CoefficientSequence& alpha, const WeightFunction& w,
                                 const LodOptions& options = {});

// floor(N^theta), guarded against pow rounding just below an integer.
std::int64_t modulus_scale(std::int64_t big_n, double theta);

// sum_{d ~ D} sum_{(m,n): (m;d) > 1, d | f(m,n)} |alpha_m| W(n/N).
// alpha must be supported on primes, so (m; d) > 1 means m | d.
double gcd_contribution(const BinaryForm& f, std::int64_t big_n, std::int64_t big_d,
                        const CoefficientSequence& alpha, const WeightFunction& w);

struct PrimeSquareResult {
  double sum = 0.0;
  double normalized = 0.0;  // sum / N^2
  std::uint64_t primes = 0;
};

// sum over primes N^delta1 <= p <= N^{2 - delta1} of |A_{p^2}(N, alpha)|.
PrimeSquareResult prime_square_sum(const BinaryForm& f, std::int64_t big_n, double delta1,
                                   const CoefficientSequence& alpha, const WeightFunction& w,
                                   std::uint64_t work_limit = kDefaultWorkLimit);

}  // namespace formsieve
