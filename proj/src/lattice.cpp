#include "formsieve/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "formsieve/errors.hpp"
#include "formsieve/factor.hpp"

namespace formsieve {
namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i128 floor_mod(i128 v, i128 m) {
  const i128 r = v % m;
  return r < 0 ? r + m : r;
}

i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

struct ExtGcd {
  i128 g, s, t;  // s*a + t*b = g > 0
};

ExtGcd ext_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

void check_coordinates(Vec2 v) {
  if (v.m > kMaxLatticeCoordinate || v.m < -kMaxLatticeCoordinate ||
      v.n > kMaxLatticeCoordinate || v.n < -kMaxLatticeCoordinate) {
    throw OverflowError("lattice coordinate beyond the 2^40 bound");
  }
}

Vec2 add(Vec2 a, Vec2 b, std::int64_t scale) { return {a.m + scale * b.m, a.n + scale * b.n}; }

bool lex_less(Vec2 a, Vec2 b) { return a.m != b.m ? a.m < b.m : a.n < b.n; }

}  // namespace

bool HermiteBasis::contains(Vec2 v) const {
  if (v.m % a != 0) return false;
  const i128 t = v.m / a;
  return floor_mod(static_cast<i128>(v.n) - t * b, c) == 0;
}

HermiteBasis hermite_form(std::span<const Vec2> generators) {
  i128 a = 0, b = 0, c = 0;
  for (const Vec2 v : generators) {
    check_coordinates(v);
    const i128 x = v.m, y = v.n;
    if (x == 0) {
      c = gcd128(c, y);
    } else if (a == 0) {
      a = x < 0 ? -x : x;
      b = x < 0 ? -y : y;
    } else {
      const ExtGcd e = ext_gcd(a, x);
      const i128 kernel = (x / e.g) * b - (a / e.g) * y;
      b = e.s * b + e.t * y;
      a = e.g;
      c = gcd128(c, kernel);
    }
    if (c != 0) b = floor_mod(b, c);
  }
  if (a == 0 || c == 0) throw ValidationError("generators do not span a rank-2 lattice");
  return {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
          static_cast<std::int64_t>(c)};
}

HermiteBasis ReducedBasis::hermite() const {
  const Vec2 rows[2] = {b1, b2};
  return hermite_form(rows);
}

ReducedBasis gauss_reduce(Vec2 g1, Vec2 g2) {
  check_coordinates(g1);
  check_coordinates(g2);
  const i128 det = cross(g1, g2);
  if (det == 0) throw ValidationError("degenerate (parallel) lattice generators");

  Vec2 u = g1, v = g2;
  if (norm2(u) > norm2(v)) std::swap(u, v);
  while (true) {
    const i128 nu = norm2(u);
    const i128 q = floor_div(2 * dot(u, v) + nu, 2 * nu);
    v = add(v, u, -static_cast<std::int64_t>(q));
    if (norm2(v) < nu) {
      std::swap(u, v);
    } else {
      break;
    }
  }

  // Every vector of length <= |v| outside the line through u is i*u + j*v
  // with |i|, |j| <= 1, so the candidates below contain all choices of B1
  // and B2.
  std::vector<Vec2> candidates;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      if (i == 0 && j == 0) continue;
      candidates.push_back(add(add(Vec2{}, u, i), v, j));
    }
  }

  const i128 first_min = norm2(u);
  std::optional<Vec2> b1;
  for (const Vec2 w : candidates) {
    if (norm2(w) != first_min || w.m <= 0) continue;
    if (!b1 || lex_less(w, *b1)) b1 = w;
  }
  if (!b1) {
    for (const Vec2 w : candidates) {
      if (norm2(w) == first_min && w.m == 0 && w.n > 0) b1 = w;
    }
  }

  std::optional<Vec2> b2;
  i128 second_min = -1;
  for (const Vec2 w : candidates) {
    if (cross(*b1, w) <= 0) continue;
    const i128 len = norm2(w);
    if (!b2 || len < second_min || (len == second_min && lex_less(w, *b2))) {
      b2 = w;
      second_min = len;
    }
  }
  const i128 reduced_det = cross(*b1, *b2);
  if (reduced_det != abs128(det)) {
    throw std::logic_error("gauss_reduce: normalized basis lost the lattice");
  }
  return {*b1, *b2, static_cast<std::int64_t>(reduced_det)};
}

ReducedBasis reduce_lattice(std::span<const Vec2> generators) {
  const HermiteBasis h = hermite_form(generators);
  return gauss_reduce({h.a, h.b}, {0, h.c});
}

std::vector<SolutionClass> enumerate_classes(const BinaryForm& f, std::uint64_t d,
                                             const RootSet& roots) {
  if (roots.modulus != d) throw ValidationError("root set modulus does not match d");
  if (d == 0 || d > static_cast<std::uint64_t>(kMaxLatticeCoordinate)) {
    throw OverflowError("modulus outside the lattice arithmetic bound");
  }
  (void)f;
  std::vector<SolutionClass> out;
  out.reserve(roots.roots.size());
  const auto dd = static_cast<std::int64_t>(d);
  for (const std::uint64_t rho : roots.roots) {
    const auto r = static_cast<std::int64_t>(rho);
    out.push_back({d, {1 % dd, r}, true, gauss_reduce({1, r}, {0, dd})});
  }
  return out;
}

ExhaustiveClasses enumerate_all_classes(const BinaryForm& f, std::uint64_t d) {
  if (d == 0 || d > kExhaustiveClassBound) {
    throw ValidationError("exhaustive class enumeration requires 1 <= d <= " +
                          std::to_string(kExhaustiveClassBound));
  }
  const auto dd = static_cast<std::int64_t>(d);
  const auto& a = f.coeffs();
  const int k = f.degree();

  ExhaustiveClasses out;
  std::map<HermiteBasis, std::size_t> index;
  std::vector<Vec2> nonprimitive;
  std::vector<std::uint64_t> coeff(static_cast<std::size_t>(k) + 1);
  std::vector<std::uint64_t> diff(static_cast<std::size_t>(k) + 1);

  for (std::int64_t m = 0; m < dd; ++m) {
    // f(m, n) as a polynomial in n: coefficient of n^i is a_i m^{k-i}.
    for (int i = 0; i <= k; ++i) {
      coeff[static_cast<std::size_t>(i)] = mul_mod(
          reduce_signed(a[static_cast<std::size_t>(i)], d),
          pow_mod(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k - i), d), d);
    }
    const Polynomial in_n(std::vector<std::int64_t>(coeff.begin(), coeff.end()));
    // Forward differences of the values at n = 0..k.
    for (int j = 0; j <= k; ++j) diff[static_cast<std::size_t>(j)] = in_n.eval_mod(static_cast<std::uint64_t>(j), d);
    for (int level = 1; level <= k; ++level) {
      for (int j = k; j >= level; --j) {
        auto& cur = diff[static_cast<std::size_t>(j)];
        cur = (cur + d - diff[static_cast<std::size_t>(j - 1)]) % d;
      }
    }
    for (std::int64_t n = 0; n < dd; ++n) {
      if (diff[0] == 0) {
        const std::int64_t g = std::gcd(std::gcd(m, n), dd);
        if (g == 1) {
          ++out.primitive_solutions;
          const Vec2 gens[3] = {{m, n}, {dd, 0}, {0, dd}};
          const HermiteBasis key = hermite_form(gens);
          const auto [it, inserted] = index.try_emplace(key, out.classes.size());
          if (inserted) {
            out.classes.push_back({d, {m, n}, std::gcd(m, dd) == 1,
                                   gauss_reduce({key.a, key.b}, {0, key.c})});
            out.class_sizes.push_back(0);
          }
          ++out.class_sizes[it->second];
        } else {
          ++out.nonprimitive_solutions;
          nonprimitive.push_back({m, n});
        }
      }
      for (int j = 0; j < k; ++j) {
        auto& cur = diff[static_cast<std::size_t>(j)];
        cur += diff[static_cast<std::size_t>(j + 1)];
        if (cur >= d) cur -= d;
      }
    }
  }
  for (const Vec2 p : nonprimitive) {
    for (const auto& [key, idx] : index) {
      if (key.contains(p)) ++out.nonprimitive_incidences;
    }
  }
  return out;
}

BoxCount count_points_in_box(const ReducedBasis& basis, std::int64_t box) {
  BoxCount out;
  const double nn = static_cast<double>(box);
  out.area_term = nn * nn / static_cast<double>(basis.det);
  out.boundary_term = nn / std::sqrt(static_cast<double>(norm2(basis.b1)));
  if (box < 0) return out;
  const HermiteBasis h = basis.hermite();
  for (std::int64_t t = 0; t * h.a <= box; ++t) {
    const std::int64_t r = static_cast<std::int64_t>(floor_mod(static_cast<i128>(t) * h.b, h.c));
    if (r <= box) out.count += static_cast<std::uint64_t>((box - r) / h.c + 1);
  }
  return out;
}

std::uint64_t multiplicity_census(const BinaryForm& f, Vec2 point, std::uint64_t d_lo,
                                  std::uint64_t d_hi) {
  const BigInt value = f.evaluate(point.m, point.n);
  if (value == 0) {
    throw ValidationError("f(u, v) = 0: the form is reducible or the point is zero");
  }
  if (d_hi <= d_lo) return 0;
  const FactoredValue fv = factor(value);

  Factorization small;  // prime powers that can appear in a divisor below d_hi
  for (const auto& [p, e] : fv.factors) {
    if (p < d_hi) small.push_back({p.get_ui(), e});
  }
  const Polynomial g = f.dehomogenize();
  std::uint64_t count = 0;

  Factorization current;
  auto visit = [&](auto&& self, std::size_t idx, std::uint64_t d) -> void {
    if (idx == small.size()) {
      if (d < d_lo) return;
      const auto u = reduce_signed(point.m, d);
      const auto v = reduce_signed(point.n, d);
      if (std::gcd(u, d) == 1 || d == 1) {
        const std::uint64_t rho = mul_mod(v, inverse_mod(u, d), d);
        if (g.eval_mod(rho, d) == 0) ++count;
      } else {
        for (const std::uint64_t rho : roots_mod(g, d, current).roots) {
          if (mul_mod(rho, u, d) == v) ++count;
        }
      }
      return;
    }
    const auto [p, e] = small[idx];
    self(self, idx + 1, d);
    std::uint64_t dd = d;
    for (int j = 1; j <= e; ++j) {
      if (dd > (d_hi - 1) / p) break;
      dd *= p;
      current.push_back({p, j});
      self(self, idx + 1, dd);
      current.pop_back();
    }
  };
  visit(visit, 0, 1);
  return count;
}

}  // namespace formsieve
