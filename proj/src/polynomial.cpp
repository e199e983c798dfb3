#include "formsieve/polynomial.hpp"

#include <sstream>
#include <utility>

#include "formsieve/errors.hpp"

namespace formsieve {

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t Polynomial::eval_mod(std::uint64_t t, std::uint64_t m) const {
  t %= m;
  std::uint64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = mul_mod(acc, t, m) + reduce_signed(*it, m);
    if (acc >= m) acc -= m;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(static_cast<std::int64_t>(i) * coeffs_[i]);
  }
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const std::int64_t c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) return 0;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  const __int128 r = static_cast<__int128>(v) % static_cast<__int128>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

namespace fp {
namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly make_monic(Poly a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t inv = inverse_mod(a.back(), p);
  for (auto& c : a) c = formsieve::mul_mod(c, inv, p);
  return a;
}

Poly pow_poly(Poly base, std::uint64_t e, const Poly& modulus, std::uint64_t p) {
  Poly result{1};
  base = rem(std::move(base), modulus, p);
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, modulus, p);
    e >>= 1;
    if (e > 0) base = mul_mod(base, base, modulus, p);
  }
  return rem(std::move(result), modulus, p);
}

Poly subtract_t(Poly a, std::uint64_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

void check_modulus(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31)) {
    throw ValidationError("F_p arithmetic requires 2 <= p < 2^31");
  }
}

}  // namespace

Poly reduce(const Polynomial& g, std::uint64_t p) {
  check_modulus(p);
  Poly out;
  out.reserve(g.coeffs().size());
  for (const auto c : g.coeffs()) out.push_back(reduce_signed(c, p));
  trim(out);
  return out;
}

Poly rem(Poly a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw ValidationError("polynomial division by zero");
  trim(a);
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = formsieve::mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - formsieve::mul_mod(factor, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + formsieve::mul_mod(a[i], b[j], p)) % p;
    }
  }
  return rem(std::move(prod), modulus, p);
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

Poly pow_t(std::uint64_t e, const Poly& modulus, std::uint64_t p) {
  return pow_poly(Poly{0, 1}, e, modulus, p);
}

std::uint64_t distinct_root_count(const Polynomial& g, std::uint64_t p) {
  const Poly gp = reduce(g, p);
  if (gp.empty()) return p;
  if (gp.size() == 1) return 0;
  const Poly h = subtract_t(pow_t(p, gp, p), p);
  return gcd(gp, h, p).size() - 1;
}

bool is_irreducible(const Polynomial& g, std::uint64_t p, int degree) {
  const Poly gp = reduce(g, p);
  if (static_cast<int>(gp.size()) - 1 != degree || degree < 1) return false;
  Poly h{0, 1};
  for (int i = 1; i <= degree / 2; ++i) {
    h = pow_poly(h, p, gp, p);
    if (gcd(gp, subtract_t(h, p), p).size() != 1) return false;
  }
  return true;
}

}  // namespace fp
}  // namespace formsieve
