#include "formsieve/weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "formsieve/errors.hpp"
#include "formsieve/primes.hpp"

namespace formsieve {
namespace {

constexpr std::size_t kMinPoints = 64;
constexpr int kMaxDoublings = 16;
constexpr int kNonnegativitySamples = 1000;

}  // namespace

WeightFunction WeightFunction::bump(double tolerance) {
  return WeightFunction(
      [](double x) { return std::exp(-1.0 / (x * (1.0 - x))); }, "bump", tolerance);
}

WeightFunction::WeightFunction(std::function<double(double)> profile, std::string name,
                               double tolerance)
    : profile_(std::move(profile)),
      name_(std::move(name)),
      tolerance_(tolerance),
      cache_(std::make_shared<Cache>()) {
  if (!(tolerance > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  for (int i = 1; i < kNonnegativitySamples; ++i) {
    if ((*this)(static_cast<double>(i) / kNonnegativitySamples) < 0.0) {
      throw ValidationError("weight function takes negative values");
    }
  }
  hat0_ = integrate(0.0).real();
  if (!(hat0_ > 0.0)) throw ValidationError("weight function has zero integral");
  cache_->values.emplace(0.0, Complex(hat0_, 0.0));
}

double WeightFunction::operator()(double x) const {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  return profile_(x);
}

Complex WeightFunction::hat(double xi) const {
  // hat W(-xi) = conj(hat W(xi)) for real W; computing only xi >= 0 makes
  // the symmetry exact.
  if (xi < 0.0) return std::conj(hat(-xi));
  {
    std::lock_guard lock(cache_->mutex);
    const auto it = cache_->values.find(xi);
    if (it != cache_->values.end()) return it->second;
  }
  const Complex value = integrate(xi);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(xi, value);
  return value;
}

// Nested trapezoidal rule on [0, 1], doubled until two levels agree to
// tolerance * hat W(0). For the bump every derivative vanishes at 0 and 1,
// so the error is the aliased tail sum_{j != 0} hat W(xi + jM) and the
// first doubling past M ~ |xi| + 64 already meets the tolerance.
Complex WeightFunction::integrate(double xi) const {
  const long double lxi = xi;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  auto sample = [&](std::size_t j, std::size_t count) -> Complex {
    const long double x = static_cast<long double>(j) / static_cast<long double>(count);
    const double wx = (*this)(static_cast<double>(x));
    if (wx == 0.0) return {};
    const long double turns = x * lxi - std::floor(x * lxi);
    const long double angle = -two_pi * turns;
    return wx * Complex(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
  };
  std::size_t m = kMinPoints + 2 * static_cast<std::size_t>(std::ceil(std::abs(xi)));
  Complex sum{};
  for (std::size_t j = 1; j < m; ++j) sum += sample(j, m);
  Complex estimate = sum / static_cast<double>(m);
  for (int level = 0; level < kMaxDoublings; ++level) {
    Complex mids{};
    for (std::size_t j = 0; j < m; ++j) mids += sample(2 * j + 1, 2 * m);
    sum += mids;
    m *= 2;
    const Complex refined = sum / static_cast<double>(m);
    const double scale = hat0_ > 0.0 ? hat0_ : std::abs(refined);
    if (std::abs(refined - estimate) <= tolerance_ * scale) return refined;
    estimate = refined;
  }
  return estimate;
}

WeightTable::WeightTable(const WeightFunction& w, std::int64_t big_n) : big_n_(big_n) {
  if (big_n < 1) throw ValidationError("N must be at least 1");
  values_.resize(static_cast<std::size_t>(big_n) + 1);
  for (std::int64_t n = 0; n <= big_n; ++n) {
    values_[static_cast<std::size_t>(n)] =
        w(static_cast<double>(n) / static_cast<double>(big_n));
  }
}

CoefficientSequence::CoefficientSequence(std::vector<Complex> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i]) > 1.0 + 1e-12) {
      throw ValidationError("coefficient alpha_" + std::to_string(i + 1) +
                            " exceeds 1 in absolute value");
    }
  }
}

CoefficientSequence CoefficientSequence::primes(std::int64_t big_n) {
  std::vector<Complex> v(static_cast<std::size_t>(std::max<std::int64_t>(big_n, 0)));
  if (big_n >= 2) {
    const PrimeSieve sieve(static_cast<std::uint64_t>(big_n));
    for (const auto p : sieve.primes()) v[p - 1] = 1.0;
  }
  return {std::move(v), "primes"};
}

CoefficientSequence CoefficientSequence::ones(std::int64_t big_n) {
  return {std::vector<Complex>(static_cast<std::size_t>(std::max<std::int64_t>(big_n, 0)), 1.0),
          "ones"};
}

CoefficientSequence CoefficientSequence::zeros(std::int64_t big_n) {
  return {std::vector<Complex>(static_cast<std::size_t>(std::max<std::int64_t>(big_n, 0))),
          "zeros"};
}

CoefficientSequence CoefficientSequence::from_values(std::vector<Complex> values,
                                                     std::string name) {
  return {std::move(values), std::move(name)};
}

CoefficientSequence CoefficientSequence::from_csv(const std::string& path, std::int64_t big_n) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open coefficient file " + path);
  std::vector<Complex> v(static_cast<std::size_t>(std::max<std::int64_t>(big_n, 0)));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::int64_t m = 0;
    double re = 0.0, im = 0.0;
    if (!(fields >> m >> re)) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": expected m,re[,im]");
    }
    fields >> im;
    if (m < 1) throw ValidationError(path + ":" + std::to_string(line_no) + ": m must be >= 1");
    if (m <= big_n) v[static_cast<std::size_t>(m - 1)] = Complex(re, im);
  }
  return {std::move(v), "csv:" + path};
}

Complex CoefficientSequence::sum(std::int64_t limit) const {
  Complex acc{};
  const std::int64_t top = std::min(limit, size_n());
  for (std::int64_t m = 1; m <= top; ++m) acc += values_[static_cast<std::size_t>(m - 1)];
  return acc;
}

bool CoefficientSequence::prime_supported() const {
  if (values_.empty()) return true;
  const PrimeSieve sieve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != Complex{} && !sieve.is_prime(i + 1)) return false;
  }
  return true;
}

}  // namespace formsieve
