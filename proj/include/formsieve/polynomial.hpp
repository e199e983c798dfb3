#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace formsieve {

/// Univariate integer polynomial, coefficient of t^i at index i.
/// Trailing zero coefficients are trimmed on construction, so the zero
/// polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::int64_t coeff(int i) const {
    return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : 0;
  }

  // g(t) mod m for 1 <= m < 2^63; the result lies in [0, m).
  [[nodiscard]] std::uint64_t eval_mod(std::uint64_t t, std::uint64_t m) const;
  [[nodiscard]] Polynomial derivative() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

// Dense polynomial arithmetic over F_p for p < 2^31. Coefficients are stored
// low-to-high, reduced to [0, p) and trimmed.
namespace fp {

using Poly = std::vector<std::uint64_t>;

Poly reduce(const Polynomial& g, std::uint64_t p);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p);
Poly rem(Poly a, const Poly& b, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
// t^e mod `modulus`.
Poly pow_t(std::uint64_t e, const Poly& modulus, std::uint64_t p);

// Number of distinct roots in F_p, computed as deg gcd(g, t^p - t).
// Returns p when g vanishes identically mod p.
std::uint64_t distinct_root_count(const Polynomial& g, std::uint64_t p);

// Ben-Or test: true iff g mod p has degree `degree` and is irreducible.
bool is_irreducible(const Polynomial& g, std::uint64_t p, int degree);

}  // namespace fp

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a modulo m, or 0 when gcd(a, m) != 1. inverse_mod(x, 1) == 0.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);
// Representative of v mod m in [0, m).
std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m);

}  // namespace formsieve
