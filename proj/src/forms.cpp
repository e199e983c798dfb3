#include "formsieve/forms.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "formsieve/errors.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {
namespace {

constexpr int kIrreducibilityPrimes = 100;

std::uint64_t abs_u64(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

BigInt to_big(std::int64_t v) {
  BigInt out;
  mpz_set_si(out.get_mpz_t(), v);
  return out;
}

}  // namespace

BinaryForm::BinaryForm(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw ValidationError("binary form needs degree k >= 1");
  if (coeffs_.front() == 0 && coeffs_.back() == 0) {
    throw ValidationError("binary form needs a_0 != 0 or a_k != 0");
  }
  std::uint64_t g = 0;
  for (const auto c : coeffs_) g = std::gcd(g, abs_u64(c));
  content_ = g;
}

BinaryForm BinaryForm::parse(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw ValidationError("malformed form coefficient list: \"" + std::string(text) + "\"");
    }
    coeffs.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return BinaryForm(std::move(coeffs));
}

BigInt BinaryForm::evaluate(const BigInt& m, const BigInt& n) const {
  const int k = degree();
  BigInt result = 0;
  BigInt npow = 1;
  std::vector<BigInt> mpow(static_cast<std::size_t>(k) + 1);
  mpow[0] = 1;
  for (int i = 1; i <= k; ++i) mpow[static_cast<std::size_t>(i)] = mpow[static_cast<std::size_t>(i - 1)] * m;
  for (int i = 0; i <= k; ++i) {
    result += to_big(coeffs_[static_cast<std::size_t>(i)]) * mpow[static_cast<std::size_t>(k - i)] * npow;
    npow *= n;
  }
  return result;
}

BigInt BinaryForm::evaluate(std::int64_t m, std::int64_t n) const {
  return evaluate(to_big(m), to_big(n));
}

std::uint64_t BinaryForm::evaluate_mod(std::int64_t m, std::int64_t n, std::uint64_t d) const {
  const std::uint64_t mm = reduce_signed(m, d);
  const std::uint64_t nn = reduce_signed(n, d);
  // Horner in m with the n-powers folded into the coefficients.
  std::uint64_t acc = 0;
  std::uint64_t npow = 1 % d;
  std::vector<std::uint64_t> terms(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    terms[i] = mul_mod(reduce_signed(coeffs_[i], d), npow, d);
    npow = mul_mod(npow, nn, d);
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc = mul_mod(acc, mm, d) + terms[i];
    if (acc >= d) acc -= d;
  }
  return acc;
}

Polynomial BinaryForm::dehomogenize() const { return Polynomial(coeffs_); }

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  return os.str();
}

std::string AdmissibilityReport::irreducible_evidence() const {
  return irreducible_witness ? "PASS(" + std::to_string(*irreducible_witness) + ")"
                             : std::string("INCONCLUSIVE");
}

std::string AdmissibilityReport::to_json() const {
  std::ostringstream os;
  os << "{\"content\":" << content << ",\"fixed_divisor_violations\":[";
  for (std::size_t i = 0; i < fixed_divisor_violations.size(); ++i) {
    if (i) os << ',';
    os << fixed_divisor_violations[i];
  }
  os << "],\"irreducible_evidence\":\"" << irreducible_evidence() << "\"}";
  return os.str();
}

AdmissibilityReport admissibility_check(const BinaryForm& f) {
  AdmissibilityReport report;
  report.content = f.content();
  const Polynomial g = f.dehomogenize();
  const int k = f.degree();
  for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(k); ++p) {
    if (!is_prime_u64(p)) continue;
    std::uint64_t roots = 0;
    for (std::uint64_t t = 0; t < p; ++t) {
      if (g.eval_mod(t, p) == 0) ++roots;
    }
    if (roots == p) report.fixed_divisor_violations.push_back(p);
  }
  if (f.content() == 1) {
    int tried = 0;
    for (std::uint64_t p = 2; tried < kIrreducibilityPrimes; ++p) {
      if (!is_prime_u64(p)) continue;
      if (reduce_signed(f.f0(), p) == 0) continue;
      ++tried;
      if (fp::is_irreducible(g, p, k)) {
        report.irreducible_witness = p;
        break;
      }
    }
  }
  return report;
}

void require_admissible(const BinaryForm& f, bool assume_irreducible) {
  const AdmissibilityReport report = admissibility_check(f);
  if (report.content != 1) {
    throw ValidationError("form has content " + std::to_string(report.content) +
                          ", which divides every value");
  }
  if (!report.fixed_divisor_violations.empty()) {
    throw ValidationError("form has fixed prime divisor " +
                          std::to_string(report.fixed_divisor_violations.front()));
  }
  if (!report.irreducible_certified() && !assume_irreducible) {
    throw ValidationError(
        "irreducibility not certified by the mod-p criterion; pass --assume-irreducible "
        "to proceed");
  }
}

}  // namespace formsieve
