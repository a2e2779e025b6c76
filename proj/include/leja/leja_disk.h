#pragma once

#include "leja/core_math.h"

#include <cstdint>
#include <string>
#include <vector>

namespace leja
{

enum class CompactTag
{
  unit_disk,
  sampled_compact
};

/// The first N points of a Leja sequence, in construction order.
struct LejaSection
{
  std::vector<Complex> points;
  CompactTag compact_tag = CompactTag::unit_disk;
  Complex origin{1.0, 0.0};

  std::size_t size() const { return points.size(); }
};

/// Leading block / tail decomposition of a unit-disk section. The block and
/// rho1 are expressed relative to the section origin, so for an origin-1
/// section roots_block is exactly the 2^{p_1}-th roots of unity.
struct SectionSplit
{
  std::vector<Complex> roots_block;
  Complex rho1;
  LejaSection remainder;
};

/// Discrete carrier for the boundary of a compact set.
struct BoundarySamples
{
  std::vector<Complex> samples;
  std::string description;
};

struct LejaValidation
{
  double max_violation = 0.0;
  std::size_t worst_k = 0; // 1-based, 0 when no k >= 2 was checked
  bool passed = true;
};

/// Validates that the samples are nonempty and pairwise distinct.
BoundarySamples make_boundary(std::vector<Complex> samples, std::string description);

/// count points exp(i*pi*(phase + 2u/count)), u = 0..count-1.
BoundarySamples circle_samples(std::size_t count, double phase = 0.0);

/// count points a*cos(t) + i*b*sin(t) on a uniform parameter grid.
BoundarySamples ellipse_samples(double a, double b, std::size_t count);

/// Explicit disk Leja section: point k is origin * exp(i*pi*sum_l j_l 2^{-l})
/// where k-1 = sum_l j_l 2^l.
LejaSection canonical_disk_leja(std::size_t n, Complex origin = {1.0, 0.0});

/// Admissible next points of a unit-disk Leja section (origin included).
std::vector<Complex> next_leja_candidates(const LejaSection& section);

/// A disk Leja section where every admissible choice is drawn uniformly.
LejaSection random_disk_leja(std::size_t n, std::uint64_t seed,
                             Complex origin = {1.0, 0.0});

/// Greedy construction restricted to the samples; ties (within 1e-12 in log)
/// go to the lowest sample index.
LejaSection greedy_leja(const BoundarySamples& boundary, std::size_t n,
                        std::size_t seed_index);

SectionSplit split_section(const LejaSection& section);

/// omega_0 = rho_1 ... rho_n of the origin-normalised section, with
/// rho_n = exp(i*pi/2^{p_n}). Any admissible next point lies in
/// origin * omega_0 * Omega_{2^{p_n}}.
Complex omega0_of_section(const LejaSection& section);

LejaValidation validate_leja(const LejaSection& section, const BoundarySamples& boundary,
                             double rel_tol);

} // namespace leja
