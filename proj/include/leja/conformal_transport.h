#pragma once

#include "leja/flip_univariate.h"
#include "leja/leja_disk.h"

#include <cstdint>
#include <vector>

namespace leja
{

enum class MapKind
{
  ellipse
};

/// Phi(z) = c1 z + c2 / z, mapping the exterior of the unit disk onto the
/// exterior of the ellipse with semi-axes a >= b > 0.
struct ExteriorMap
{
  MapKind kind = MapKind::ellipse;
  double a = 1.0;
  double b = 1.0;
  double c1 = 1.0;
  double c2 = 0.0;

  Complex operator()(Complex z) const { return c1 * z + c2 / z; }
  Complex derivative(Complex z) const { return c1 - c2 / (z * z); }
};

ExteriorMap ellipse_exterior_map(double a, double b);

struct TransportedSection
{
  LejaSection source;
  std::vector<Complex> images;
  ExteriorMap map;
};

TransportedSection transport_sequence(const ExteriorMap& map, const LejaSection& section);

/// x -> Phi(exp(i pi x)).
Curve boundary_curve(const ExteriorMap& map);

/// Per-node sups and Lebesgue constant of the transported basis over Phi(circle).
FlipSweep transported_sweep(const TransportedSection& ts, std::size_t boundary_grid = 0,
                            int refine_iters = 40);

/// p is 1-based.
SupNormEstimate flip_sup_on_compact(const TransportedSection& ts, std::size_t p,
                                    std::size_t boundary_grid = 0, int refine_iters = 40);

LebesgueReport lebesgue_on_compact(const TransportedSection& ts,
                                   std::size_t boundary_grid = 0, int refine_iters = 40);

/// sup over w_grid circle points of the trapezoid integral over t_grid nodes;
/// the node nearest arg(w) takes the limit Phi''(w) / (2 Phi'(w)), with
/// Phi'' from a central second difference along the tangent.
double estimate_alper_constant(const ExteriorMap& map, std::size_t w_grid,
                               std::size_t t_grid);

struct AlperStudy
{
  double coarse = 0.0; // (w_grid, t_grid)
  double fine = 0.0;   // (2 w_grid, 2 t_grid)
  double change() const { return std::abs(fine - coarse); }
};

AlperStudy alper_grid_study(const ExteriorMap& map, std::size_t w_grid, std::size_t t_grid);

struct DistortionRange
{
  double min = 0.0;
  double max = 0.0;
};

/// |Phi(z) - Phi(w)| / |z - w| over random distinct circle pairs.
DistortionRange measure_distortion(const ExteriorMap& map, std::size_t pairs,
                                   std::uint64_t seed);

struct TransportRatioCheck
{
  double max_ratio = 0.0; // transported / source FLIP modulus at matched parameters
  double envelope = 0.0;  // (M2/M1) * max P / min P with M1 = b, M2 = a
  bool holds() const { return max_ratio <= envelope; }
};

/// P(z) = |prod_j (Phi(z) - Phi(eta_j)) / (z - eta_j)| is sampled on a circle
/// grid plus the nodes; the ratio is sampled on the same grid.
TransportRatioCheck transport_ratio_check(const TransportedSection& ts, std::size_t grid);

} // namespace leja
