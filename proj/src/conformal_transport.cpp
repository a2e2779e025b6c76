#include "leja/conformal_transport.h"
#include "leja/parallel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace leja
{

ExteriorMap ellipse_exterior_map(double a, double b)
{
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a))
    throw std::invalid_argument("ellipse_exterior_map: need a >= b > 0");
  ExteriorMap map;
  map.a = a;
  map.b = b;
  map.c1 = 0.5 * (a + b);
  map.c2 = 0.5 * (a - b);
  return map;
}
//-----------------------------------------------------------------------------
TransportedSection transport_sequence(const ExteriorMap& map, const LejaSection& section)
{
  if (section.compact_tag != CompactTag::unit_disk)
    throw std::invalid_argument("transport_sequence: source must be a unit-disk section");
  TransportedSection ts{section, {}, map};
  ts.images.reserve(section.size());
  for (const Complex& p : section.points)
    ts.images.push_back(map(p));
  return ts;
}
//-----------------------------------------------------------------------------
Curve boundary_curve(const ExteriorMap& map)
{
  return [map](double x) { return map(unit_root(x)); };
}
//-----------------------------------------------------------------------------
FlipSweep transported_sweep(const TransportedSection& ts, std::size_t boundary_grid,
                            int refine_iters)
{
  const LagrangeBasis1D basis(ts.images);
  return sweep_on_curve(basis, boundary_curve(ts.map), boundary_grid, refine_iters);
}
//-----------------------------------------------------------------------------
SupNormEstimate flip_sup_on_compact(const TransportedSection& ts, std::size_t p,
                                    std::size_t boundary_grid, int refine_iters)
{
  if (p < 1 || p > ts.images.size())
    throw std::out_of_range("flip_sup_on_compact: node index out of range");
  return transported_sweep(ts, boundary_grid, refine_iters).per_node[p - 1];
}
//-----------------------------------------------------------------------------
LebesgueReport lebesgue_on_compact(const TransportedSection& ts, std::size_t boundary_grid,
                                   int refine_iters)
{
  return make_report(transported_sweep(ts, boundary_grid, refine_iters));
}
//-----------------------------------------------------------------------------
double estimate_alper_constant(const ExteriorMap& map, std::size_t w_grid,
                               std::size_t t_grid)
{
  if (w_grid == 0 || t_grid == 0)
    throw std::invalid_argument("estimate_alper_constant: grids must be nonempty");

  const double dt = 2.0 * pi / static_cast<double>(t_grid);
  std::vector<double> integrals(w_grid);
  parallel_for(
      w_grid,
      [&](std::size_t i)
      {
        const double xw = 2.0 * static_cast<double>(i) / static_cast<double>(w_grid);
        const Complex w = unit_root(xw);
        const Complex phi_w = map(w);

        // removable singularity at z = w
        const double h = 1e-4;
        const Complex step = Complex{0.0, h} * w;
        const Complex second = (map(w + step) - 2.0 * phi_w + map(w - step)) / (step * step);
        const double limit = std::abs(second / (2.0 * map.derivative(w)));

        const auto nearest = static_cast<std::size_t>(
                                 std::llround(xw * 0.5 * static_cast<double>(t_grid)))
                             % t_grid;
        CompensatedSum sum;
        for (std::size_t j = 0; j < t_grid; ++j)
        {
          if (j == nearest)
          {
            sum.add(limit);
            continue;
          }
          const Complex z = unit_root(2.0 * static_cast<double>(j) / static_cast<double>(t_grid));
          sum.add(std::abs(map.derivative(z) / (map(z) - phi_w) - 1.0 / (z - w)));
        }
        integrals[i] = sum.value() * dt;
      });
  return *std::max_element(integrals.begin(), integrals.end());
}
//-----------------------------------------------------------------------------
AlperStudy alper_grid_study(const ExteriorMap& map, std::size_t w_grid, std::size_t t_grid)
{
  return {estimate_alper_constant(map, w_grid, t_grid),
          estimate_alper_constant(map, 2 * w_grid, 2 * t_grid)};
}
//-----------------------------------------------------------------------------
DistortionRange measure_distortion(const ExteriorMap& map, std::size_t pairs,
                                   std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  DistortionRange r{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < pairs; ++i)
  {
    const Complex z = unit_root(angle(rng));
    Complex w = unit_root(angle(rng));
    while (w == z)
      w = unit_root(angle(rng));
    const double q = std::abs(map(z) - map(w)) / std::abs(z - w);
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
  }
  return r;
}
//-----------------------------------------------------------------------------
TransportRatioCheck transport_ratio_check(const TransportedSection& ts, std::size_t grid)
{
  const std::vector<Complex>& eta = ts.source.points;
  const ExteriorMap& map = ts.map;
  const std::size_t n = eta.size();
  if (grid == 0)
    throw std::invalid_argument("transport_ratio_check: grid must be nonempty");

  // log P(z); at a node the factor becomes |Phi'(eta_j)|
  auto log_p = [&](Complex z)
  {
    const Complex fz = map(z);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
    {
      const Complex d = z - eta[j];
      s += (std::abs(d) < 1e-14) ? std::log(std::abs(map.derivative(eta[j])))
                                 : std::log(std::abs((fz - ts.images[j]) / d));
    }
    return s;
  };

  const LagrangeBasis1D source(eta);
  const LagrangeBasis1D target(ts.images);

  std::vector<double> log_ps(grid);
  std::vector<double> ratios(grid, 0.0);
  parallel_for(grid,
               [&](std::size_t i)
               {
                 const Complex z = unit_root(-1.0 + 2.0 * static_cast<double>(i + 1)
                                                        / static_cast<double>(grid));
                 log_ps[i] = log_p(z);
                 std::vector<double> a(n);
                 std::vector<double> b(n);
                 source.abs_all(z, a);
                 target.abs_all(map(z), b);
                 double worst = 0.0;
                 for (std::size_t k = 0; k < n; ++k)
                   if (a[k] > 1e-12)
                     worst = std::max(worst, b[k] / a[k]);
                 ratios[i] = worst;
               });
  for (const Complex& e : eta)
    log_ps.push_back(log_p(e));

  const auto [lo, hi] = std::minmax_element(log_ps.begin(), log_ps.end());
  TransportRatioCheck check;
  check.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  check.envelope = (map.a / map.b) * std::exp(*hi - *lo);
  return check;
}

} // namespace leja
