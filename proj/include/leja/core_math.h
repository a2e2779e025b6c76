#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace leja
{

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// N = 2^{p_1} + ... + 2^{p_n} with p_1 > ... > p_n >= 0.
struct BinaryDecomposition
{
  std::vector<int> exponents;

  std::uint64_t value() const;
  int leading() const { return exponents.front(); }
  int trailing() const { return exponents.back(); }
};

/// l = 2^{s_1} - 2^{s_2} + ... - 2^{s_{2L}} with s_1 > ... > s_{2L} >= 0.
struct AlternatingDecomposition
{
  std::vector<int> exponents;

  std::int64_t value() const;
};

BinaryDecomposition binary_decompose(std::uint64_t n);

/// Splits l into maximal chains of consecutive ones, each chain
/// 2^{r_1} + ... + 2^{r_v} rewritten as 2^{r_1+1} - 2^{r_v}.
AlternatingDecomposition alternating_decompose(std::uint64_t l);

bool is_power_of_two(std::uint64_t n);

/// prod_{j=1}^m cos(alpha / 2^j), evaluated factor by factor.
/// Throws std::domain_error when alpha lies within 1e-12 of pi*Z.
double half_angle_cos_product(double alpha, int m);

/// sin(alpha) / (2^m sin(alpha / 2^m)); same domain as above.
double half_angle_cos_product_closed(double alpha, int m);

/// exp(i*pi*x), exact at every multiple of 1/2.
Complex unit_root(double x);

/// A complex product held as log|P| and arg P.
struct LogProduct
{
  double log_magnitude = 0.0;
  double phase = 0.0;

  bool is_zero() const;
  Complex value() const;
};

/// prod_j (z - points_j) accumulated in the log domain.
LogProduct stable_abs_product(std::span<const Complex> points, Complex z);

/// log prod_j |z - points_j|, optionally skipping one index. Uses
/// mantissa/exponent rescaling instead of one log per factor.
double log_abs_product(std::span<const Complex> points, Complex z,
                       std::ptrdiff_t skip = -1);

/// Least-squares slope of log y against log x; needs two distinct positive x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Neumaier-compensated running sum.
class CompensatedSum
{
public:
  void add(double x);
  double value() const { return sum_ + correction_; }

private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

} // namespace leja
