#include "leja/conformal_transport.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace leja;

namespace
{
/// Independent value of the Alper integral for the ellipse map. The kernel
/// difference reduces to c2 / (z (c1 z w - c2)), so the integral over t is
/// int_0^{2 pi} c2 / |c1 e^{iu} - c2| du for every w; a large trapezoid sum
/// of this smooth periodic integrand converges spectrally.
double ellipse_alper_oracle(double a, double b)
{
  const double c1 = 0.5 * (a + b);
  const double c2 = 0.5 * (a - b);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += c2 / std::abs(c1 * std::polar(1.0, 2.0 * pi * i / n) - c2);
  return sum * 2.0 * pi / n;
}
} // namespace

TEST_CASE("ellipse_exterior_map examples")
{
  const ExteriorMap id = ellipse_exterior_map(1.0, 1.0);
  CHECK(id(Complex(0.3, -0.7)) == Complex(0.3, -0.7));

  const ExteriorMap m = ellipse_exterior_map(1.2, 0.8);
  CHECK(m.c1 == doctest::Approx(1.0));
  CHECK(m.c2 == doctest::Approx(0.2));
  CHECK(std::abs(m(1.0) - 1.2) < 1e-15);
  CHECK(std::abs(m(Complex(0.0, 1.0)) - Complex(0.0, 0.8)) < 1e-15);

  CHECK(std::abs(ellipse_exterior_map(2.0, 2.0)(Complex(0.0, 1.0)) - Complex(0.0, 2.0)) < 1e-15);

  CHECK_THROWS_AS(ellipse_exterior_map(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ellipse_exterior_map(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("the circle maps onto the ellipse")
{
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{1.2, 0.8}, std::pair{1.0, 1.0}})
  {
    const ExteriorMap m = ellipse_exterior_map(a, b);
    for (int i = 0; i < 256; ++i)
    {
      const Complex z = m(unit_root(i / 128.0));
      const double r = z.real() * z.real() / (a * a) + z.imag() * z.imag() / (b * b);
      REQUIRE(std::abs(r - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("derivative matches a difference quotient")
{
  const ExteriorMap m = ellipse_exterior_map(2.0, 1.0);
  const Complex z = std::polar(1.3, 0.4);
  const double h = 1e-6;
  const Complex fd = (m(z + h) - m(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - m.derivative(z)) < 1e-8);
}

TEST_CASE("transport_sequence examples")
{
  const LejaSection s = canonical_disk_leja(33);
  const TransportedSection id = transport_sequence(ellipse_exterior_map(1.0, 1.0), s);
  CHECK(id.images == s.points);

  const TransportedSection t4 = transport_sequence(ellipse_exterior_map(1.2, 0.8), canonical_disk_leja(4));
  const std::vector<Complex> expected{1.2, -1.2, Complex(0.0, 0.8), Complex(0.0, -0.8)};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(t4.images[i] - expected[i]) < 1e-15);

  CHECK(transport_sequence(ellipse_exterior_map(2.0, 1.0), canonical_disk_leja(1)).images.size() == 1);

  const LejaSection off{{Complex(2.0, 0.0)}, CompactTag::sampled_compact, 2.0};
  CHECK_THROWS_AS(transport_sequence(ellipse_exterior_map(1.2, 0.8), off), std::invalid_argument);
}

TEST_CASE("transported images are distinct and lie on the ellipse")
{
  const double a = 1.2;
  const double b = 0.8;
  const TransportedSection ts = transport_sequence(ellipse_exterior_map(a, b), canonical_disk_leja(512));
  for (const Complex& z : ts.images)
    REQUIRE(std::abs(z.real() * z.real() / (a * a) + z.imag() * z.imag() / (b * b) - 1.0) <= 1e-10);
  std::vector<Complex> sorted = ts.images;
  std::sort(sorted.begin(), sorted.end(), [](Complex x, Complex y)
            { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    REQUIRE(sorted[i] != sorted[i - 1]);
}

TEST_CASE("identity transport reproduces the disk results")
{
  const ExteriorMap id = ellipse_exterior_map(1.0, 1.0);
  for (std::size_t n : {1, 3, 8, 21, 64, 100})
  {
    const LejaSection s = canonical_disk_leja(n);
    const TransportedSection ts = transport_sequence(id, s);
    const LebesgueReport disk = lebesgue_constant(s.points);
    const LebesgueReport moved = lebesgue_on_compact(ts);
    REQUIRE(std::abs(disk.constant - moved.constant) <= 1e-9);
    for (std::size_t k = 0; k < n; ++k)
      REQUIRE(std::abs(disk.per_node_sup[k] - moved.per_node_sup[k]) <= 1e-9);
  }
  for (int p = 0; p <= 6; ++p)
  {
    const TransportedSection ts = transport_sequence(id, canonical_disk_leja(std::size_t{1} << p));
    for (std::size_t k = 1; k <= ts.images.size(); ++k)
      REQUIRE(std::abs(flip_sup_on_compact(ts, k).value - 1.0) <= 1e-9);
  }
  CHECK(lebesgue_on_compact(transport_sequence(ellipse_exterior_map(2.0, 1.0), canonical_disk_leja(1))).constant
        == 1.0);
}

TEST_CASE("transported FLIP sups grow slower than N")
{
  const TransportedSection full = transport_sequence(ellipse_exterior_map(1.2, 0.8), canonical_disk_leja(256));
  std::vector<double> ns;
  std::vector<double> sups;
  for (std::size_t n = 2; n <= 256; ++n)
  {
    TransportedSection ts = full;
    ts.source.points.resize(n);
    ts.images.resize(n);
    double worst = 0.0;
    for (const SupNormEstimate& e : transported_sweep(ts).per_node)
    {
      REQUIRE(std::isfinite(e.value));
      REQUIRE(e.value >= 1.0 - 1e-12);
      worst = std::max(worst, e.value);
    }
    ns.push_back(static_cast<double>(n));
    sups.push_back(worst);
  }
  CHECK(loglog_slope(ns, sups) < 1.0);
}

TEST_CASE("Lebesgue constants on the ellipse increase along N = 2^p - 1")
{
  const ExteriorMap m = ellipse_exterior_map(1.2, 0.8);
  double previous = 0.0;
  for (int p = 3; p <= 6; ++p)
  {
    const double lambda = lebesgue_on_compact(transport_sequence(m, canonical_disk_leja((std::size_t{1} << p) - 1))).constant;
    REQUIRE(std::isfinite(lambda));
    REQUIRE(lambda > previous);
    previous = lambda;
  }
}

TEST_CASE("Alper constant")
{
  CHECK(std::abs(estimate_alper_constant(ellipse_exterior_map(1.0, 1.0), 256, 1024)) <= 1e-6);

  const double mild = estimate_alper_constant(ellipse_exterior_map(1.2, 0.8), 256, 1024);
  const double eccentric = estimate_alper_constant(ellipse_exterior_map(2.0, 1.0), 256, 1024);
  CHECK(mild > 0.0);
  CHECK(eccentric > mild);

  CHECK(std::abs(mild - ellipse_alper_oracle(1.2, 0.8)) <= 1e-6);
  CHECK(std::abs(eccentric - ellipse_alper_oracle(2.0, 1.0)) <= 1e-6);

  CHECK(alper_grid_study(ellipse_exterior_map(1.2, 0.8), 256, 1024).change() <= 1e-3);
  CHECK(alper_grid_study(ellipse_exterior_map(2.0, 1.0), 256, 1024).change() <= 1e-3);
}

TEST_CASE("distortion ratios stay within [b, a]")
{
  for (auto [a, b] : {std::pair{1.2, 0.8}, std::pair{2.0, 1.0}, std::pair{3.0, 0.5}})
  {
    const DistortionRange r = measure_distortion(ellipse_exterior_map(a, b), 10000, 17);
    REQUIRE(r.min >= b * (1.0 - 1e-9));
    REQUIRE(r.max <= a * (1.0 + 1e-9));
    REQUIRE(r.min <= r.max);
  }
}

TEST_CASE("transported to source FLIP ratio stays under the measured envelope")
{
  const LejaSection all = canonical_disk_leja(128);
  for (auto [a, b] : {std::pair{1.2, 0.8}, std::pair{2.0, 1.0}})
  {
    const ExteriorMap m = ellipse_exterior_map(a, b);
    for (std::size_t n = 2; n <= 128; ++n)
    {
      LejaSection s = all;
      s.points.resize(n);
      const TransportRatioCheck c = transport_ratio_check(transport_sequence(m, s), 1024);
      REQUIRE(std::isfinite(c.max_ratio));
      REQUIRE(c.holds());
    }
  }
}
