#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "formsieve/forms.hpp"
#include "formsieve/lattice.hpp"
#include "formsieve/weight.hpp"

namespace formsieve {

// psi(lambda, N, alpha) = sum over (m, n) in lambda with 0 < m <= N of
// alpha_m W(n/N), enumerated in increasing (m, n).
Complex psi_direct(const ReducedBasis& lattice, std::int64_t big_n,
                   const CoefficientSequence& alpha, const WeightTable& weights);
Complex psi_direct(const ReducedBasis& lattice, std::int64_t big_n,
                   const CoefficientSequence& alpha, const WeightFunction& w);

// (N hat W(0) / det) * sum_{m <= N} alpha_m.
Complex main_term(std::int64_t det, std::int64_t big_n, const CoefficientSequence& alpha,
                  const WeightFunction& w);

// floor(D N^{-1+delta}): the largest |v| kept in the dual sum.
std::int64_t default_truncation(std::int64_t big_d, std::int64_t big_n, double delta);

/// Dual (Poisson) evaluation
///   (N/d) sum_{|v| <= v_max} hat W(vN/d) sum_{m <= N} alpha_m e(m v (B12 + d b) / (d B11)),
/// b the inverse of B21 mod B11 taken in [0, B11) plus inverse_shift * B11.
/// The v = 0 term is computed exactly as main_term, so v_max < 1 returns
/// main_term bit-for-bit. Requires B11 >= 1 and gcd(B11, B21) = 1.
Complex psi_poisson(const ReducedBasis& lattice, std::int64_t big_n,
                    const CoefficientSequence& alpha, const WeightFunction& w,
                    std::int64_t v_max, std::int64_t inverse_shift = 0);

// Bound on |psi_poisson - psi_direct|: the measured tail
// (N/d) sum|alpha| sum_{|v| > v_max} |hat W(vN/d)| plus the quadrature
// error carried by each retained term.
double poisson_tolerance(const ReducedBasis& lattice, std::int64_t big_n,
                         const CoefficientSequence& alpha, const WeightFunction& w,
                         std::int64_t v_max);

// Maps each B11 in the dyadic range to its b, coprime to B11.
using BAssignment = std::function<std::int64_t(std::int64_t)>;

struct Fraction {
  std::int64_t a = 0;
  std::int64_t q = 1;
  friend auto operator<=>(const Fraction&, const Fraction&) = default;
};

// #{(B11, v) : B11 in [M1, 2 M1), 0 < |v| <= V, v b / B11 == a/q (mod 1)}.
std::uint64_t farey_count(std::int64_t m1, const BAssignment& b_of, std::int64_t v_bound,
                          Fraction target);

// Every reduced fraction a/q reached by some (B11, v), with its count.
std::map<Fraction, std::uint64_t> farey_tally(std::int64_t m1, const BAssignment& b_of,
                                              std::int64_t v_bound);

/// A family of lattices with the hypotheses of the averaged large sieve:
/// det in [D, 2D), B11 in [M1, 2M1), B11 values distinct, and coprime
/// m-coordinates (gcd(B11, B21) = 1).
struct FamilySpec {
  std::vector<ReducedBasis> lattices;
  std::int64_t big_n = 1;
  std::int64_t big_d = 1;
  std::int64_t m1 = 1;
  double delta = 0.1;

  struct Flags {
    bool det_in_range = true;
    bool b11_in_range = true;
    bool distinct_b11 = true;
    bool coprime_m = true;
    [[nodiscard]] bool all() const { return det_in_range && b11_in_range && distinct_b11 && coprime_m; }
  };
  [[nodiscard]] Flags verify() const;
};

// Lattices of U'(d), d in [D, 2D), with B11 in [M1, 2M1); the first lattice
// (by d, then root) is kept for each B11 value.
FamilySpec build_family(const BinaryForm& f, std::int64_t big_n, std::int64_t big_d,
                        std::int64_t m1, double delta);

enum class BoundCase { kSmallModulus, kLargeSieve, kOutOfRange };
std::string to_string(BoundCase c);

struct FamilyReport {
  struct Record {
    std::size_t id = 0;
    std::int64_t b11 = 0;
    std::int64_t det = 0;
    Complex psi;
    Complex main;
    double abs_err = 0.0;
  };
  std::vector<Record> records;
  double total_error = 0.0;
  double trivial_bound = 0.0;  // sum |main term|
  double bound_shape = 0.0;    // N M1^{-1/2} D^{1/2}
  BoundCase bound_case = BoundCase::kSmallModulus;

  [[nodiscard]] double ratio_to_trivial() const {
    return trivial_bound > 0.0 ? total_error / trivial_bound : 0.0;
  }
  [[nodiscard]] double ratio_to_shape() const {
    return bound_shape > 0.0 ? total_error / bound_shape : 0.0;
  }
};

BoundCase classify_bound_case(std::int64_t big_n, std::int64_t big_d, std::int64_t m1,
                              double delta);

// Sum over the family of |psi_direct - main_term|. Throws HypothesisError
// naming the failed flags when the family does not verify.
FamilyReport family_discrepancy(const FamilySpec& spec, const CoefficientSequence& alpha,
                                const WeightFunction& w, unsigned jobs = 1);

}  // namespace formsieve
