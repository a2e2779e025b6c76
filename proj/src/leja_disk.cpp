#include "leja/leja_disk.h"
#include "leja/parallel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace leja
{

namespace
{
constexpr double unit_tol = 1e-12;

bool on_unit_circle(Complex z) { return std::abs(std::abs(z) - 1.0) <= unit_tol; }

void require_unit_disk(const LejaSection& section, const char* who)
{
  if (section.compact_tag != CompactTag::unit_disk)
    throw std::invalid_argument(std::string(who) + ": section is not a unit-disk section");
  if (section.points.empty())
    throw std::invalid_argument(std::string(who) + ": empty section");
}

std::vector<Complex> normalised_points(const LejaSection& section)
{
  std::vector<Complex> pts(section.points);
  for (Complex& p : pts)
    p /= section.origin;
  return pts;
}
} // namespace
//-----------------------------------------------------------------------------
BoundarySamples make_boundary(std::vector<Complex> samples, std::string description)
{
  if (samples.empty())
    throw std::invalid_argument("boundary samples must be nonempty");
  for (const Complex& s : samples)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::invalid_argument("boundary samples must be finite");

  std::vector<Complex> sorted(samples);
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b)
            { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("boundary samples must be pairwise distinct");
  return {std::move(samples), std::move(description)};
}
//-----------------------------------------------------------------------------
BoundarySamples circle_samples(std::size_t count, double phase)
{
  std::vector<Complex> s(count);
  for (std::size_t u = 0; u < count; ++u)
    s[u] = unit_root(phase + 2.0 * static_cast<double>(u) / static_cast<double>(count));
  return make_boundary(std::move(s), "unit circle, " + std::to_string(count)
                                         + " uniform samples");
}
//-----------------------------------------------------------------------------
BoundarySamples ellipse_samples(double a, double b, std::size_t count)
{
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("ellipse_samples: semi-axes must be positive");
  std::vector<Complex> s(count);
  for (std::size_t u = 0; u < count; ++u)
  {
    const Complex e = unit_root(2.0 * static_cast<double>(u) / static_cast<double>(count));
    s[u] = {a * e.real(), b * e.imag()};
  }
  return make_boundary(std::move(s), "ellipse a=" + std::to_string(a) + " b="
                                         + std::to_string(b) + ", "
                                         + std::to_string(count) + " samples");
}
//-----------------------------------------------------------------------------
LejaSection canonical_disk_leja(std::size_t n, Complex origin)
{
  if (n == 0)
    throw std::invalid_argument("canonical_disk_leja: N must be positive");
  if (!on_unit_circle(origin))
    throw std::invalid_argument("canonical_disk_leja: origin must have modulus 1");

  LejaSection section;
  section.origin = origin;
  section.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    // bit l of k contributes 2^{-l} to the angle (in units of pi)
    double x = 0.0;
    double weight = 1.0;
    for (std::size_t bits = k; bits != 0; bits >>= 1U, weight *= 0.5)
      if (bits & 1U)
        x += weight;
    section.points.push_back(origin * unit_root(x));
  }
  return section;
}
//-----------------------------------------------------------------------------
std::vector<Complex> next_leja_candidates(const LejaSection& section)
{
  require_unit_disk(section, "next_leja_candidates");
  const std::size_t n = section.size();
  Complex base;
  std::size_t count = 0;
  if (is_power_of_two(n))
  {
    base = unit_root(1.0 / static_cast<double>(n));
    count = n;
  }
  else
  {
    base = omega0_of_section(section);
    count = std::size_t{1} << binary_decompose(n).trailing();
  }
  std::vector<Complex> out(count);
  for (std::size_t u = 0; u < count; ++u)
    out[u] = section.origin * base
             * unit_root(2.0 * static_cast<double>(u) / static_cast<double>(count));
  return out;
}
//-----------------------------------------------------------------------------
LejaSection random_disk_leja(std::size_t n, std::uint64_t seed, Complex origin)
{
  if (n == 0)
    throw std::invalid_argument("random_disk_leja: N must be positive");
  if (!on_unit_circle(origin))
    throw std::invalid_argument("random_disk_leja: origin must have modulus 1");

  std::mt19937_64 rng(seed);
  LejaSection section;
  section.origin = origin;
  section.points.reserve(n);
  section.points.push_back(origin);
  while (section.size() < n)
  {
    const std::vector<Complex> candidates = next_leja_candidates(section);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    section.points.push_back(candidates[pick(rng)]);
  }
  return section;
}
//-----------------------------------------------------------------------------
LejaSection greedy_leja(const BoundarySamples& boundary, std::size_t n,
                        std::size_t seed_index)
{
  const std::vector<Complex>& s = boundary.samples;
  if (n == 0)
    throw std::invalid_argument("greedy_leja: N must be positive");
  if (n > s.size())
    throw std::invalid_argument("greedy_leja: N exceeds the number of samples");
  if (seed_index >= s.size())
    throw std::invalid_argument("greedy_leja: seed index out of range");

  LejaSection section;
  section.compact_tag = std::all_of(s.begin(), s.end(), on_unit_circle)
                            ? CompactTag::unit_disk
                            : CompactTag::sampled_compact;
  section.origin = s[seed_index];
  section.points.push_back(s[seed_index]);

  std::vector<double> log_prod(s.size(), 0.0);
  std::size_t last = seed_index;
  while (section.size() < n)
  {
    const Complex eta = s[last];
    parallel_for(s.size(),
                 [&](std::size_t i)
                 {
                   const double d = std::abs(s[i] - eta);
                   log_prod[i] += (d == 0.0) ? -std::numeric_limits<double>::infinity()
                                             : std::log(d);
                 });
    const double best = *std::max_element(log_prod.begin(), log_prod.end());
    std::size_t choice = 0;
    while (log_prod[choice] < best - 1e-12)
      ++choice;
    section.points.push_back(s[choice]);
    last = choice;
  }
  return section;
}
//-----------------------------------------------------------------------------
SectionSplit split_section(const LejaSection& section)
{
  require_unit_disk(section, "split_section");
  const std::size_t n = section.size();
  if (is_power_of_two(n))
    throw std::invalid_argument("split_section: N is a power of two, nothing to split");

  const std::size_t block = std::size_t{1} << binary_decompose(n).leading();
  const std::vector<Complex> pts = normalised_points(section);

  SectionSplit split;
  split.roots_block.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(block));
  split.rho1 = pts[block];
  split.remainder.compact_tag = CompactTag::unit_disk;
  split.remainder.origin = {1.0, 0.0};
  for (std::size_t j = block; j < n; ++j)
    split.remainder.points.push_back(section.points[j] / section.points[block]);
  split.remainder.points.front() = {1.0, 0.0};
  return split;
}
//-----------------------------------------------------------------------------
Complex omega0_of_section(const LejaSection& section)
{
  require_unit_disk(section, "omega0_of_section");
  const std::size_t n = section.size();
  if (is_power_of_two(n))
    throw std::invalid_argument("omega0_of_section: N is a power of two");

  const BinaryDecomposition d = binary_decompose(n);
  const std::vector<Complex> pts = normalised_points(section);
  Complex alpha{1.0, 0.0};
  std::size_t offset = 0;
  for (std::size_t q = 0; q + 1 < d.exponents.size(); ++q)
  {
    offset += std::size_t{1} << d.exponents[q];
    // leading point of the q-th remainder block is alpha * rho_q
    const Complex rho = pts[offset] / alpha;
    alpha *= rho / std::abs(rho);
  }
  return alpha * unit_root(1.0 / static_cast<double>(std::size_t{1} << d.trailing()));
}
//-----------------------------------------------------------------------------
LejaValidation validate_leja(const LejaSection& section, const BoundarySamples& boundary,
                             double rel_tol)
{
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("validate_leja: rel_tol must be positive");

  LejaValidation report;
  const std::vector<Complex>& s = boundary.samples;
  const std::vector<Complex>& eta = section.points;
  std::vector<double> log_prod(s.size(), 0.0);
  for (std::size_t k = 1; k < eta.size(); ++k)
  {
    const Complex prev = eta[k - 1];
    parallel_for(s.size(),
                 [&](std::size_t i)
                 {
                   const double d = std::abs(s[i] - prev);
                   log_prod[i] += (d == 0.0) ? -std::numeric_limits<double>::infinity()
                                             : std::log(d);
                 });
    const double sup = *std::max_element(log_prod.begin(), log_prod.end());
    if (sup == -std::numeric_limits<double>::infinity())
      continue;
    const double value = log_abs_product(std::span(eta.data(), k), eta[k]);
    const double shortfall = std::max(0.0, -std::expm1(value - sup));
    if (shortfall > report.max_violation)
    {
      report.max_violation = shortfall;
      report.worst_k = k + 1;
    }
  }
  report.passed = report.max_violation <= rel_tol;
  return report;
}

} // namespace leja
