#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace formsieve {

using Complex = std::complex<double>;

/// Smooth nonnegative weight W supported in [0, 1] with its Fourier
/// transform hat W(xi) = int_0^1 W(x) e(-x xi) dx, e(t) = exp(2 pi i t).
///
/// The transform is computed by a nested trapezoidal rule, doubled until it
/// settles to the tolerance, and cached per xi. Copies share the cache;
/// evaluation is thread-safe.
class WeightFunction {
 public:
  // exp(-1/(x(1-x))) on (0, 1), 0 elsewhere.
  static WeightFunction bump(double tolerance = 1e-12);

  // Arbitrary profile; values outside (0, 1) are ignored. Throws
  // ValidationError if the profile is negative on a sample grid or has
  // zero integral.
  WeightFunction(std::function<double(double)> profile, std::string name,
                 double tolerance = 1e-12);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] Complex hat(double xi) const;
  // hat W(0) = int W, real and positive.
  [[nodiscard]] double hat0() const { return hat0_; }
  [[nodiscard]] double tolerance() const { return tolerance_; }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  [[nodiscard]] Complex integrate(double xi) const;

  struct Cache {
    std::mutex mutex;
    std::map<double, Complex> values;
  };

  std::function<double(double)> profile_;
  std::string name_;
  double tolerance_;
  double hat0_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

/// W(n/N) for n = 0..N, so every sum over n reads the same weight values.
class WeightTable {
 public:
  WeightTable(const WeightFunction& w, std::int64_t big_n);

  [[nodiscard]] std::int64_t size_n() const { return big_n_; }
  // W(n/N); zero outside 0 <= n <= N.
  [[nodiscard]] double operator[](std::int64_t n) const {
    return (n < 0 || n > big_n_) ? 0.0 : values_[static_cast<std::size_t>(n)];
  }

 private:
  std::int64_t big_n_;
  std::vector<double> values_;
};

/// Bounded complex weights alpha_m, m = 1..N.
class CoefficientSequence {
 public:
  static CoefficientSequence primes(std::int64_t big_n);
  static CoefficientSequence ones(std::int64_t big_n);
  static CoefficientSequence zeros(std::int64_t big_n);
  // Lines "m,re[,im]"; blank lines and '#' comments skipped; unlisted m are 0.
  static CoefficientSequence from_csv(const std::string& path, std::int64_t big_n);
  // values[m-1] = alpha_m. Throws ValidationError if some |alpha_m| > 1.
  static CoefficientSequence from_values(std::vector<Complex> values, std::string name);

  [[nodiscard]] std::int64_t size_n() const { return static_cast<std::int64_t>(values_.size()); }
  [[nodiscard]] Complex operator[](std::int64_t m) const {
    return (m < 1 || m > size_n()) ? Complex{} : values_[static_cast<std::size_t>(m - 1)];
  }
  // sum_{m <= limit} alpha_m, accumulated in increasing m.
  [[nodiscard]] Complex sum(std::int64_t limit) const;
  [[nodiscard]] bool prime_supported() const;
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  CoefficientSequence(std::vector<Complex> values, std::string name);

  std::vector<Complex> values_;
  std::string name_;
};

}  // namespace formsieve
