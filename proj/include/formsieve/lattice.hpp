#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "formsieve/congruence.hpp"
#include "formsieve/forms.hpp"

namespace formsieve {

/// Integer point (m, n) of Z^2.
struct Vec2 {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline __int128 norm2(Vec2 v) {
  return static_cast<__int128>(v.m) * v.m + static_cast<__int128>(v.n) * v.n;
}
inline __int128 dot(Vec2 a, Vec2 b) {
  return static_cast<__int128>(a.m) * b.m + static_cast<__int128>(a.n) * b.n;
}
inline __int128 cross(Vec2 a, Vec2 b) {
  return static_cast<__int128>(a.m) * b.n - static_cast<__int128>(a.n) * b.m;
}

// Coordinates and moduli handled by the lattice code stay below this bound,
// so every squared length and determinant fits in 128 bits.
inline constexpr std::int64_t kMaxLatticeCoordinate = std::int64_t{1} << 40;

/// Hermite form of a full-rank lattice: all points (t*a, t*b + s*c) with
/// a, c > 0 and 0 <= b < c. Two generator sets span the same lattice iff
/// their Hermite forms agree.
struct HermiteBasis {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  [[nodiscard]] std::int64_t det() const { return a * c; }
  [[nodiscard]] bool contains(Vec2 v) const;

  friend bool operator==(const HermiteBasis&, const HermiteBasis&) = default;
  friend auto operator<=>(const HermiteBasis&, const HermiteBasis&) = default;
};

HermiteBasis hermite_form(std::span<const Vec2> generators);

/// Lagrange-Gauss reduced basis with rows B1, B2.
///
/// B1 is a shortest nonzero vector and B2 a shortest vector independent of
/// it. Normalization: among shortest candidates B1 has B11 > 0 when one
/// exists (else B12 > 0), lexicographically smallest (B11, B12) among
/// those; B2 is the lexicographically smallest candidate with det B > 0.
struct ReducedBasis {
  Vec2 b1;
  Vec2 b2;
  std::int64_t det = 1;

  [[nodiscard]] std::int64_t b11() const { return b1.m; }
  [[nodiscard]] std::int64_t b12() const { return b1.n; }
  [[nodiscard]] std::int64_t b21() const { return b2.m; }
  [[nodiscard]] std::int64_t b22() const { return b2.n; }
  [[nodiscard]] HermiteBasis hermite() const;
  [[nodiscard]] bool contains(Vec2 v) const { return hermite().contains(v); }

  friend bool operator==(const ReducedBasis&, const ReducedBasis&) = default;
};

// Throws ValidationError for parallel (degenerate) generators.
ReducedBasis gauss_reduce(Vec2 g1, Vec2 g2);
ReducedBasis reduce_lattice(std::span<const Vec2> generators);

/// An equivalence class x of primitive solutions of f(m,n) == 0 (mod d)
/// under (m,n) ~ t(m,n), together with the reduced basis of lambda(x).
struct SolutionClass {
  std::uint64_t d = 1;
  Vec2 rep;
  bool primitive_m = true;  // (m;d) = 1, i.e. x lies in U'(d)
  ReducedBasis basis;
};

// The classes of U'(d): one per root rho, representative (1, rho), lattice
// generated by (1, rho) and (0, d).
std::vector<SolutionClass> enumerate_classes(const BinaryForm& f, std::uint64_t d,
                                             const RootSet& roots);

inline constexpr std::uint64_t kExhaustiveClassBound = 2000;

struct ExhaustiveClasses {
  // All of U(d), ordered by lexicographically smallest member.
  std::vector<SolutionClass> classes;
  // Number of primitive solutions mod d in each class.
  std::vector<std::uint64_t> class_sizes;
  std::uint64_t primitive_solutions = 0;
  std::uint64_t nonprimitive_solutions = 0;
  // Sum over nonprimitive solutions of the number of class lattices
  // containing them (those may lie in several lattices, or none).
  std::uint64_t nonprimitive_incidences = 0;
};

// Scans all (m, n) in [0, d)^2, for d <= kExhaustiveClassBound.
ExhaustiveClasses enumerate_all_classes(const BinaryForm& f, std::uint64_t d);

struct BoxCount {
  std::uint64_t count = 0;
  // Terms of the standard estimate N^2/d + N/|B1| + 1.
  double area_term = 0.0;
  double boundary_term = 0.0;
  double unit_term = 1.0;

  [[nodiscard]] double estimate() const { return area_term + boundary_term + unit_term; }
};

// Exact number of lattice points in [0, N]^2.
BoxCount count_points_in_box(const ReducedBasis& basis, std::int64_t box);

// Number of pairs (d, x) with d in [d_lo, d_hi), x in U'(d) and
// (u, v) in lambda(x). Throws ValidationError when f(u, v) = 0.
std::uint64_t multiplicity_census(const BinaryForm& f, Vec2 point, std::uint64_t d_lo,
                                  std::uint64_t d_hi);

}  // namespace formsieve
