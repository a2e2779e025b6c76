#include "leja/core_math.h"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace leja;

TEST_CASE("binary_decompose examples")
{
  CHECK(binary_decompose(1).exponents == std::vector<int>{0});
  CHECK(binary_decompose(6).exponents == std::vector<int>{2, 1});
  std::vector<int> all;
  for (int p = 9; p >= 0; --p)
    all.push_back(p);
  CHECK(binary_decompose(1023).exponents == all);
  CHECK_THROWS_AS(binary_decompose(0), std::invalid_argument);
}

TEST_CASE("binary_decompose reassembles every N up to 10^6")
{
  for (std::uint64_t n = 1; n <= 1000000; ++n)
  {
    const BinaryDecomposition d = binary_decompose(n);
    REQUIRE(d.value() == n);
    for (std::size_t i = 1; i < d.exponents.size(); ++i)
      REQUIRE(d.exponents[i] < d.exponents[i - 1]);
    REQUIRE(d.exponents.back() >= 0);
  }
}

TEST_CASE("alternating_decompose examples")
{
  CHECK(alternating_decompose(1).exponents == std::vector<int>{1, 0});
  CHECK(alternating_decompose(3).exponents == std::vector<int>{2, 0});
  CHECK(alternating_decompose(5).exponents == std::vector<int>{3, 2, 1, 0});
  CHECK_THROWS_AS(alternating_decompose(0), std::invalid_argument);
}

TEST_CASE("alternating_decompose reassembles every l up to 10^5")
{
  for (std::uint64_t l = 1; l <= 100000; ++l)
  {
    const AlternatingDecomposition d = alternating_decompose(l);
    REQUIRE(d.value() == static_cast<std::int64_t>(l));
    REQUIRE(d.exponents.size() % 2 == 0);
    REQUIRE(!d.exponents.empty());
    for (std::size_t i = 1; i < d.exponents.size(); ++i)
      REQUIRE(d.exponents[i] < d.exponents[i - 1]);
    REQUIRE(d.exponents.back() >= 0);
    // leading exponent is one above the highest set bit
    REQUIRE(d.exponents.front() == binary_decompose(l).leading() + 1);
  }
}

TEST_CASE("half-angle cosine product")
{
  CHECK(half_angle_cos_product(pi / 3.0, 0) == 1.0);
  CHECK(half_angle_cos_product(pi / 2.0, 1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  const double closed = std::sin(pi / 2.0) / (256.0 * std::sin(pi / 512.0));
  CHECK(std::abs(half_angle_cos_product(pi / 2.0, 8) - closed) <= 1e-12 * closed);
  CHECK(std::abs(half_angle_cos_product_closed(pi / 2.0, 8) - closed) <= 1e-15 * closed);

  CHECK_THROWS_AS(half_angle_cos_product(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(half_angle_cos_product(pi, 3), std::domain_error);
  CHECK_THROWS_AS(half_angle_cos_product(-2.0 * pi + 1e-13, 3), std::domain_error);
  CHECK_THROWS_AS(half_angle_cos_product_closed(3.0 * pi, 1), std::domain_error);
}

TEST_CASE("half-angle product: direct and closed forms agree on random inputs")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(-20.0, 20.0);
  std::uniform_int_distribution<int> m(0, 20);
  int checked = 0;
  while (checked < 10000)
  {
    const double a = alpha(rng);
    if (std::abs(a - std::round(a / pi) * pi) < 1e-6)
      continue;
    const int mm = m(rng);
    const double direct = half_angle_cos_product(a, mm);
    const double closed = half_angle_cos_product_closed(a, mm);
    REQUIRE(std::abs(direct - closed) <= 1e-10 * std::abs(closed));
    ++checked;
  }
}

TEST_CASE("unit_root is exact at quarter turns")
{
  CHECK(unit_root(0.0) == Complex(1.0, 0.0));
  CHECK(unit_root(0.5) == Complex(0.0, 1.0));
  CHECK(unit_root(1.0) == Complex(-1.0, 0.0));
  CHECK(unit_root(1.5) == Complex(0.0, -1.0));
  CHECK(unit_root(-0.5) == Complex(0.0, -1.0));
  CHECK(unit_root(4.0) == Complex(1.0, 0.0));
  CHECK(std::abs(unit_root(0.25) - std::polar(1.0, pi / 4.0)) < 1e-16);
}

TEST_CASE("stable_abs_product examples")
{
  const LogProduct empty = stable_abs_product({}, Complex{0.3, 0.2});
  CHECK(empty.log_magnitude == 0.0);
  CHECK(empty.phase == 0.0);

  const std::vector<Complex> pm{1.0, -1.0};
  const LogProduct minus_one = stable_abs_product(pm, 0.0);
  CHECK(std::abs(minus_one.log_magnitude) < 1e-15);
  CHECK(std::abs(minus_one.phase - pi) < 1e-15);

  std::vector<Complex> roots;
  for (int k = 0; k < 64; ++k)
    roots.push_back(unit_root(k / 32.0));
  CHECK(stable_abs_product(roots, roots[17]).is_zero());
  CHECK(stable_abs_product(roots, roots[17]).value() == Complex(0.0, 0.0));
  CHECK(log_abs_product(roots, roots[17]) == -INFINITY);
}

TEST_CASE("log-domain products agree with the naive product")
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(0, 300);
  std::uniform_real_distribution<double> scale(0.05, 3.0);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial)
  {
    const double s = scale(rng);
    std::vector<Complex> pts(len(rng));
    for (Complex& p : pts)
      p = {s * u(rng), s * u(rng)};
    const Complex z{s * u(rng), s * u(rng)};
    Complex naive{1.0, 0.0};
    for (const Complex& p : pts)
      naive *= z - p;
    const double mag = std::abs(naive);
    if (!(mag >= 1e-300 && mag <= 1e300))
      continue;
    ++checked;
    const LogProduct lp = stable_abs_product(pts, z);
    REQUIRE(std::abs(lp.value() - naive) <= 1e-10 * mag);
    REQUIRE(std::abs(std::exp(log_abs_product(pts, z)) - mag) <= 1e-10 * mag);
  }
  CHECK(checked > 500);
}

TEST_CASE("log_abs_product survives products beyond double range")
{
  std::vector<Complex> far(400, Complex{1e10, 0.0});
  CHECK(log_abs_product(far, 0.0) == doctest::Approx(400.0 * std::log(1e10)));
  std::vector<Complex> near(400, Complex{1e-200, 0.0});
  CHECK(log_abs_product(near, 0.0) == doctest::Approx(400.0 * std::log(1e-200)));
  CHECK(log_abs_product(near, 0.0, 3) == doctest::Approx(399.0 * std::log(1e-200)));
}

TEST_CASE("loglog_slope and compensated sum")
{
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  const std::vector<double> y{3.0, 12.0, 48.0, 192.0};
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
  CHECK_THROWS(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}));

  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i)
    s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}
