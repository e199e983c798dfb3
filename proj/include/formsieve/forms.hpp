#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "formsieve/polynomial.hpp"

namespace formsieve {

using BigInt = mpz_class;

/// Integer binary form f(x,y) = sum_{i=0..k} a_i x^{k-i} y^i.
///
/// The coefficient convention is fixed everywhere (I/O included): a_i
/// multiplies x^{k-i} y^i, so the dehomogenization g(t) = f(1,t) has the
/// same coefficient list read low-to-high. f0 = a_k is the coefficient of
/// y^k. Values f(m,n) are exact big integers.
class BinaryForm {
 public:
  // Requires k >= 1 and (a_0 != 0 or a_k != 0).
  explicit BinaryForm(std::vector<std::int64_t> coeffs);

  // Parses "a0,a1,...,ak". Throws ValidationError on malformed input.
  static BinaryForm parse(std::string_view text);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::int64_t f0() const { return coeffs_.back(); }
  [[nodiscard]] std::int64_t leading_x() const { return coeffs_.front(); }
  // gcd(a_0, ..., a_k), always positive.
  [[nodiscard]] std::uint64_t content() const { return content_; }

  [[nodiscard]] BigInt evaluate(const BigInt& m, const BigInt& n) const;
  [[nodiscard]] BigInt evaluate(std::int64_t m, std::int64_t n) const;
  // f(m,n) mod d in [0, d), for 1 <= d < 2^63.
  [[nodiscard]] std::uint64_t evaluate_mod(std::int64_t m, std::int64_t n, std::uint64_t d) const;

  [[nodiscard]] Polynomial dehomogenize() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<std::int64_t> coeffs_;
  std::uint64_t content_ = 1;
};

struct AdmissibilityReport {
  std::uint64_t content = 1;
  // Primes p <= k with nu(p) = p, i.e. p divides every value f(1,n).
  std::vector<std::uint64_t> fixed_divisor_violations;
  // Prime p for which f(1,t) mod p is irreducible of degree k, if any was
  // found among the first 100 primes not dividing f0.
  std::optional<std::uint64_t> irreducible_witness;

  [[nodiscard]] bool no_fixed_divisor() const {
    return content == 1 && fixed_divisor_violations.empty();
  }
  [[nodiscard]] bool irreducible_certified() const { return irreducible_witness.has_value(); }
  // "PASS(p)" or "INCONCLUSIVE".
  [[nodiscard]] std::string irreducible_evidence() const;
  // JSON object {content, fixed_divisor_violations, irreducible_evidence}.
  [[nodiscard]] std::string to_json() const;
};

// Content and fixed-divisor checks plus the sufficient mod-p irreducibility
// criterion. Primes p > k need no check: with content 1, g has at most k
// roots mod p.
AdmissibilityReport admissibility_check(const BinaryForm& f);

// Throws ValidationError unless the form is content-1 with no fixed prime
// divisor and either certified irreducible or `assume_irreducible` is set.
void require_admissible(const BinaryForm& f, bool assume_irreducible);

}  // namespace formsieve
