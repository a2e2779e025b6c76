#include "leja/leja_disk.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace leja;

namespace
{
bool near(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

/// Sorted angles in [0, 2) (units of pi), used to compare point sets.
std::vector<double> angles(const std::vector<Complex>& pts)
{
  std::vector<double> out;
  for (const Complex& p : pts)
  {
    double a = std::arg(p) / pi;
    if (a < -1e-13)
      a += 2.0;
    out.push_back(std::max(a, 0.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}
} // namespace

TEST_CASE("canonical_disk_leja examples")
{
  const LejaSection s4 = canonical_disk_leja(4);
  REQUIRE(s4.size() == 4);
  CHECK(near(s4.points[0], 1.0));
  CHECK(near(s4.points[1], -1.0));
  CHECK(near(s4.points[2], Complex(0.0, 1.0)));
  CHECK(near(s4.points[3], Complex(0.0, -1.0)));

  const LejaSection s1 = canonical_disk_leja(1);
  CHECK(s1.points == std::vector<Complex>{1.0});

  CHECK_THROWS_AS(canonical_disk_leja(0), std::invalid_argument);
  CHECK_THROWS_AS(canonical_disk_leja(4, Complex(1.1, 0.0)), std::invalid_argument);

  const LejaSection rotated = canonical_disk_leja(4, unit_root(0.25));
  CHECK(near(rotated.points[1], -unit_root(0.25)));
}

TEST_CASE("first 2^p canonical points are the 2^p-th roots of unity")
{
  for (int p = 0; p <= 12; ++p)
  {
    const std::size_t m = std::size_t{1} << p;
    const std::vector<double> got = angles(canonical_disk_leja(m).points);
    for (std::size_t k = 0; k < m; ++k)
      REQUIRE(std::abs(got[k] - 2.0 * static_cast<double>(k) / static_cast<double>(m)) < 1e-12);
  }
}

TEST_CASE("greedy_leja examples")
{
  const BoundarySamples circle = circle_samples(1024);
  const LejaSection two = greedy_leja(circle, 2, 0);
  CHECK(near(two.points[0], 1.0));
  CHECK(near(two.points[1], -1.0));
  CHECK(two.compact_tag == CompactTag::unit_disk);

  const LejaSection sixteen = greedy_leja(circle_samples(4096), 16, 0);
  CHECK(validate_leja(sixteen, circle_samples(4096), 1e-6).passed);

  const BoundarySamples ell = ellipse_samples(1.2, 0.8, 512);
  const LejaSection one = greedy_leja(ell, 1, 0);
  CHECK(one.size() == 1);
  CHECK(near(one.points[0], ell.samples[0]));
  CHECK(one.compact_tag == CompactTag::sampled_compact);

  CHECK_THROWS_AS(greedy_leja(circle_samples(8), 9, 0), std::invalid_argument);
  CHECK_THROWS_AS(greedy_leja(circle_samples(8), 2, 8), std::invalid_argument);
}

TEST_CASE("greedy ties go to the lowest sample index")
{
  // after 1 and -1, i and -i tie; i comes first in the sample order
  const LejaSection s = greedy_leja(circle_samples(4), 3, 0);
  CHECK(near(s.points[2], Complex(0.0, 1.0)));

  std::vector<Complex> reordered{1.0, -1.0, Complex(0.0, -1.0), Complex(0.0, 1.0)};
  const LejaSection t = greedy_leja(make_boundary(reordered, "reordered"), 3, 0);
  CHECK(near(t.points[2], Complex(0.0, -1.0)));
}

TEST_CASE("greedy on dense circle samples passes validation")
{
  for (std::size_t n : {8, 16, 24, 40, 64})
  {
    const std::size_t count = 64 * n;
    const BoundarySamples b = circle_samples(count, 0.123);
    const LejaSection s = greedy_leja(b, n, 7);
    REQUIRE(validate_leja(s, b, 10.0 / static_cast<double>(count)).passed);
  }
}

TEST_CASE("boundary samples must be distinct and nonempty")
{
  CHECK_THROWS_AS(make_boundary({}, "empty"), std::invalid_argument);
  CHECK_THROWS_AS(make_boundary({1.0, 2.0, 1.0}, "dup"), std::invalid_argument);
  CHECK_THROWS_AS(ellipse_samples(1.0, 0.0, 16), std::invalid_argument);
}

TEST_CASE("split_section examples")
{
  const SectionSplit s3 = split_section(canonical_disk_leja(3));
  REQUIRE(s3.roots_block.size() == 2);
  CHECK(near(s3.roots_block[0], 1.0));
  CHECK(near(s3.roots_block[1], -1.0));
  CHECK(near(s3.rho1, Complex(0.0, 1.0)));
  REQUIRE(s3.remainder.size() == 1);
  CHECK(near(s3.remainder.points[0], 1.0));

  const SectionSplit s6 = split_section(canonical_disk_leja(6));
  CHECK(near(s6.rho1, canonical_disk_leja(6).points[4]));
  CHECK(s6.remainder.size() == 2);
  CHECK(validate_leja(s6.remainder, circle_samples(4096), 1e-9).passed);

  const SectionSplit s5 = split_section(canonical_disk_leja(5));
  CHECK(s5.remainder.points == std::vector<Complex>{1.0});

  CHECK_THROWS_AS(split_section(canonical_disk_leja(8)), std::invalid_argument);
}

TEST_CASE("split_section reassembles every canonical section up to 4096")
{
  const LejaSection full = canonical_disk_leja(4096);
  for (std::size_t n = 3; n <= 4096; ++n)
  {
    if (is_power_of_two(n))
      continue;
    const LejaSection s{{full.points.begin(), full.points.begin() + static_cast<std::ptrdiff_t>(n)},
                        CompactTag::unit_disk, 1.0};
    const SectionSplit sp = split_section(s);
    REQUIRE(std::abs(std::pow(sp.rho1, static_cast<double>(sp.roots_block.size())) + 1.0) < 1e-10);
    std::vector<Complex> again(sp.roots_block);
    for (const Complex& r : sp.remainder.points)
      again.push_back(sp.rho1 * r);
    REQUIRE(again.size() == n);
    for (std::size_t k = 0; k < n; ++k)
      REQUIRE(near(again[k], s.points[k]));
  }
}

TEST_CASE("omega0 examples")
{
  CHECK(near(omega0_of_section(canonical_disk_leja(3)), Complex(0.0, -1.0)));
  const Complex w6 = omega0_of_section(canonical_disk_leja(6));
  CHECK(std::abs(std::pow(w6, 4) + 1.0) < 1e-10);
  CHECK(std::abs(std::abs(w6) - 1.0) < 1e-14);
  CHECK_THROWS_AS(omega0_of_section(canonical_disk_leja(4)), std::invalid_argument);
}

TEST_CASE("omega0 postconditions for every canonical N up to 4096")
{
  const LejaSection full = canonical_disk_leja(4097);
  for (std::size_t n = 3; n <= 4096; ++n)
  {
    if (is_power_of_two(n))
      continue;
    const LejaSection s{{full.points.begin(), full.points.begin() + static_cast<std::ptrdiff_t>(n)},
                        CompactTag::unit_disk, 1.0};
    const BinaryDecomposition d = binary_decompose(n);
    const Complex w = omega0_of_section(s);
    Complex wp = w;
    for (int j = 0; j < d.leading(); ++j)
      wp *= wp;
    REQUIRE(std::abs(wp + 1.0) <= 1e-10);

    // z_{N+1} / omega0 must be a 2^{p_n}-th root of unity
    Complex r = full.points[n] / w;
    for (int j = 0; j < d.trailing(); ++j)
      r *= r;
    REQUIRE(std::abs(r - 1.0) <= 1e-10);
  }
}

TEST_CASE("next candidates contain the canonical continuation")
{
  const LejaSection full = canonical_disk_leja(200);
  for (std::size_t n = 1; n < 200; ++n)
  {
    const LejaSection s{{full.points.begin(), full.points.begin() + static_cast<std::ptrdiff_t>(n)},
                        CompactTag::unit_disk, 1.0};
    const std::vector<Complex> c = next_leja_candidates(s);
    const bool found = std::any_of(c.begin(), c.end(),
                                   [&](Complex x) { return near(x, full.points[n], 1e-12); });
    REQUIRE(found);
  }
}

TEST_CASE("randomised disk sections satisfy the Leja property")
{
  const BoundarySamples b = circle_samples(8192, 0.01);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
  {
    const Complex origin = unit_root(0.1 * static_cast<double>(seed));
    const LejaSection s = random_disk_leja(40, seed, origin);
    REQUIRE(near(s.points[0], origin));
    // exact Leja points beat every sample
    REQUIRE(validate_leja(s, b, 1e-12).passed);
  }
  CHECK(random_disk_leja(30, 5).points == random_disk_leja(30, 5).points);
}

TEST_CASE("validate_leja examples")
{
  CHECK(validate_leja(canonical_disk_leja(32), circle_samples(8192), 1e-6).passed);

  const LejaSection bad{{1.0, Complex(0.0, 1.0)}, CompactTag::unit_disk, 1.0};
  const LejaValidation v = validate_leja(bad, circle_samples(1024), 1e-6);
  CHECK_FALSE(v.passed);
  CHECK(v.worst_k == 2);
  CHECK(v.max_violation == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));

  const LejaValidation one = validate_leja(canonical_disk_leja(1), circle_samples(64), 1e-6);
  CHECK(one.passed);
  CHECK(one.max_violation == 0.0);
  CHECK_THROWS_AS(validate_leja(bad, circle_samples(16), 0.0), std::invalid_argument);
}
