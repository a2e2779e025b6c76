#include "leja/core_math.h"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leja
{

std::uint64_t BinaryDecomposition::value() const
{
  std::uint64_t n = 0;
  for (int p : exponents)
    n += std::uint64_t{1} << p;
  return n;
}
//-----------------------------------------------------------------------------
std::int64_t AlternatingDecomposition::value() const
{
  std::int64_t l = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i)
  {
    const std::int64_t term = std::int64_t{1} << exponents[i];
    l += (i % 2 == 0) ? term : -term;
  }
  return l;
}
//-----------------------------------------------------------------------------
BinaryDecomposition binary_decompose(std::uint64_t n)
{
  if (n == 0)
    throw std::invalid_argument("binary_decompose: N must be positive");

  BinaryDecomposition d;
  for (int p = 63; p >= 0; --p)
    if ((n >> p) & 1U)
      d.exponents.push_back(p);
  return d;
}
//-----------------------------------------------------------------------------
AlternatingDecomposition alternating_decompose(std::uint64_t l)
{
  if (l == 0)
    throw std::invalid_argument("alternating_decompose: l must be positive");
  if (l >> 62)
    throw std::invalid_argument("alternating_decompose: l too large");

  AlternatingDecomposition d;
  int bit = 63 - std::countl_zero(l);
  while (bit >= 0)
  {
    if (!((l >> bit) & 1U))
    {
      --bit;
      continue;
    }
    // chain of consecutive ones from r_1 = bit down to r_v
    const int top = bit;
    while (bit >= 0 && ((l >> bit) & 1U))
      --bit;
    d.exponents.push_back(top + 1);
    d.exponents.push_back(bit + 1);
  }
  return d;
}
//-----------------------------------------------------------------------------
bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }
//-----------------------------------------------------------------------------
namespace
{
void check_not_multiple_of_pi(double alpha)
{
  const double k = std::round(alpha / pi);
  if (std::abs(alpha - k * pi) < 1e-12)
    throw std::domain_error("half-angle product: alpha is a multiple of pi");
}
} // namespace
//-----------------------------------------------------------------------------
double half_angle_cos_product(double alpha, int m)
{
  check_not_multiple_of_pi(alpha);
  if (m < 0)
    throw std::invalid_argument("half-angle product: m must be >= 0");
  double prod = 1.0;
  double angle = alpha;
  for (int j = 1; j <= m; ++j)
  {
    angle *= 0.5;
    prod *= std::cos(angle);
  }
  return prod;
}
//-----------------------------------------------------------------------------
double half_angle_cos_product_closed(double alpha, int m)
{
  check_not_multiple_of_pi(alpha);
  if (m < 0)
    throw std::invalid_argument("half-angle product: m must be >= 0");
  const double scale = std::ldexp(1.0, m);
  return std::sin(alpha) / (scale * std::sin(alpha / scale));
}
//-----------------------------------------------------------------------------
Complex unit_root(double x)
{
  double r = std::fmod(x, 2.0);
  if (r < 0.0)
    r += 2.0;
  const int quadrant = static_cast<int>(r / 0.5);
  r -= 0.5 * quadrant;
  double c = std::cos(pi * r);
  double s = std::sin(pi * r);
  if (r == 0.0)
  {
    c = 1.0;
    s = 0.0;
  }
  switch (quadrant % 4)
  {
  case 0:
    return {c, s};
  case 1:
    return {-s, c};
  case 2:
    return {-c, -s};
  default:
    return {s, -c};
  }
}
//-----------------------------------------------------------------------------
bool LogProduct::is_zero() const
{
  return log_magnitude == -std::numeric_limits<double>::infinity();
}
//-----------------------------------------------------------------------------
Complex LogProduct::value() const
{
  if (is_zero())
    return {0.0, 0.0};
  return std::polar(std::exp(log_magnitude), phase);
}
//-----------------------------------------------------------------------------
LogProduct stable_abs_product(std::span<const Complex> points, Complex z)
{
  LogProduct out;
  double phase = 0.0;
  for (const Complex& p : points)
  {
    const Complex f = z - p;
    if (f == Complex{0.0, 0.0})
    {
      out.log_magnitude = -std::numeric_limits<double>::infinity();
      out.phase = 0.0;
      return out;
    }
    out.log_magnitude += std::log(std::abs(f));
    phase += std::arg(f);
  }
  phase = std::remainder(phase, 2.0 * pi);
  if (phase <= -pi)
    phase += 2.0 * pi;
  out.phase = phase;
  return out;
}
//-----------------------------------------------------------------------------
double log_abs_product(std::span<const Complex> points, Complex z,
                       std::ptrdiff_t skip)
{
  // product of squared moduli kept as mantissa * 2^exponent
  double mantissa = 1.0;
  double extra_log = 0.0;
  long exponent = 0;
  int pending = 0;
  const auto count = static_cast<std::ptrdiff_t>(points.size());
  for (std::ptrdiff_t j = 0; j < count; ++j)
  {
    if (j == skip)
      continue;
    const Complex f = z - points[j];
    if (f == Complex{0.0, 0.0})
      return -std::numeric_limits<double>::infinity();
    const double d2 = std::norm(f);
    if (d2 < 1e-200 || d2 > 1e200)
    {
      extra_log += 2.0 * std::log(std::abs(f));
      continue;
    }
    mantissa *= d2;
    if (++pending == 4)
    {
      int e = 0;
      mantissa = std::frexp(mantissa, &e);
      exponent += e;
      pending = 0;
    }
  }
  return 0.5 * (std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0)
                + extra_log);
}
//-----------------------------------------------------------------------------
double loglog_slope(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need matching samples, at least two");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("loglog_slope: samples must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0)
    throw std::invalid_argument("loglog_slope: x values must not all coincide");
  return sxy / sxx;
}
//-----------------------------------------------------------------------------
void CompensatedSum::add(double x)
{
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    correction_ += (sum_ - t) + x;
  else
    correction_ += (x - t) + sum_;
  sum_ = t;
}

} // namespace leja
