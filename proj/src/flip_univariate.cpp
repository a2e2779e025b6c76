#include "leja/flip_univariate.h"
#include "leja/parallel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leja
{

namespace
{
constexpr double near_node = 1e-8;

void check_distinct(const std::vector<Complex>& nodes)
{
  std::vector<Complex> sorted(nodes);
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b)
            { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("interpolation nodes must be pairwise distinct");
}

/// z^{2^p} by repeated squaring.
Complex pow2(Complex z, int p)
{
  for (int j = 0; j < p; ++j)
    z *= z;
  return z;
}

Complex ipow(Complex z, std::size_t m)
{
  Complex r{1.0, 0.0};
  while (m != 0)
  {
    if (m & 1U)
      r *= z;
    z *= z;
    m >>= 1U;
  }
  return r;
}

double wrap_unit(double x)
{
  while (x <= -1.0)
    x += 2.0;
  while (x > 1.0)
    x -= 2.0;
  return x;
}

double grid_point(std::size_t i, std::size_t grid)
{
  return -1.0 + 2.0 * static_cast<double>(i + 1) / static_cast<double>(grid);
}

/// Golden-section search for a maximum of f on [lo, hi]; returns the best
/// abscissa visited.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters)
{
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iters; ++it)
  {
    if (fc >= fd)
    {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
    else
    {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

struct GridBest
{
  double value = -1.0;
  std::size_t index = 0;

  void offer(double v, std::size_t i)
  {
    if (v > value)
    {
      value = v;
      index = i;
    }
  }
};

template <typename F>
SupNormEstimate refine(F&& f, const GridBest& best, std::size_t grid, int iters)
{
  SupNormEstimate est;
  est.coarse_grid_size = grid;
  est.value = best.value;
  double x = grid_point(best.index, grid);
  if (iters > 0)
  {
    const double h = 2.0 / static_cast<double>(grid);
    const double xr = golden_max(f, x - h, x + h, iters);
    const double vr = f(xr);
    est.refined = true;
    if (vr > est.value)
    {
      est.value = vr;
      x = xr;
    }
  }
  est.argmax_angle = pi * wrap_unit(x);
  return est;
}
} // namespace
//-----------------------------------------------------------------------------
LagrangeBasis1D::LagrangeBasis1D(std::vector<Complex> nodes) : nodes_(std::move(nodes))
{
  if (nodes_.empty())
    throw std::invalid_argument("LagrangeBasis1D: no nodes");
  check_distinct(nodes_);

  const std::size_t n = nodes_.size();
  log_denominator_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    log_denominator_[k]
        = log_abs_product(nodes_, nodes_[k], static_cast<std::ptrdiff_t>(k));

  const auto [lo, hi] = std::minmax_element(log_denominator_.begin(), log_denominator_.end());
  shift_ = -0.5 * (*lo + *hi);
  weight_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    weight_[k] = std::exp(-log_denominator_[k] - shift_);
}
//-----------------------------------------------------------------------------
Complex LagrangeBasis1D::value(std::size_t k, Complex z) const
{
  // complex mantissa with a binary exponent, rescaled when it drifts
  Complex m{1.0, 0.0};
  long exponent = 0;
  const Complex eta = nodes_[k];
  for (std::size_t j = 0; j < nodes_.size(); ++j)
  {
    if (j == k)
      continue;
    m *= (z - nodes_[j]) / (eta - nodes_[j]);
    const double a = std::abs(m);
    if (a == 0.0)
      return {0.0, 0.0};
    if (a > 1e100 || a < 1e-100)
    {
      int e = 0;
      std::frexp(a, &e);
      m = {std::ldexp(m.real(), -e), std::ldexp(m.imag(), -e)};
      exponent += e;
    }
  }
  const int e = static_cast<int>(std::clamp(exponent, -100000L, 100000L));
  return {std::ldexp(m.real(), e), std::ldexp(m.imag(), e)};
}
//-----------------------------------------------------------------------------
double LagrangeBasis1D::abs_value(std::size_t k, Complex z) const
{
  const double lp = log_abs_product(nodes_, z, static_cast<std::ptrdiff_t>(k));
  return std::exp(lp - log_denominator_[k]);
}
//-----------------------------------------------------------------------------
void LagrangeBasis1D::abs_all(Complex z, std::span<double> out) const
{
  const std::size_t n = nodes_.size();
  if (n == 1)
  {
    out[0] = 1.0;
    return;
  }
  const double log_l = log_abs_product(nodes_, z);
  if (log_l == -std::numeric_limits<double>::infinity())
  {
    // z is a node
    for (std::size_t k = 0; k < n; ++k)
      out[k] = (nodes_[k] == z) ? 1.0 : 0.0;
    return;
  }

  const double scale = std::exp(log_l + shift_);
  const bool fast = std::isfinite(scale) && scale > 1e-280 && scale < 1e280;
  for (std::size_t k = 0; k < n; ++k)
  {
    const double d = std::abs(z - nodes_[k]);
    if (d < near_node)
      out[k] = abs_value(k, z);
    else if (fast)
      out[k] = scale * weight_[k] / d;
    else
      out[k] = std::exp(log_l - log_denominator_[k] - std::log(d));
  }
}
//-----------------------------------------------------------------------------
double LagrangeBasis1D::lebesgue_function(Complex z) const
{
  std::vector<double> buf(nodes_.size());
  abs_all(z, buf);
  double s = 0.0;
  for (double v : buf)
    s += v;
  return s;
}
//-----------------------------------------------------------------------------
Complex circle_point(double x) { return unit_root(x); }
//-----------------------------------------------------------------------------
std::size_t default_grid_size(std::size_t n)
{
  return std::bit_ceil(std::max<std::size_t>(4096, 64 * n));
}
//-----------------------------------------------------------------------------
FlipSweep sweep_on_curve(const LagrangeBasis1D& basis, const Curve& curve,
                         std::size_t grid, int refine_iters)
{
  const std::size_t n = basis.size();
  const std::size_t g = grid == 0 ? default_grid_size(n) : grid;

  struct ChunkResult
  {
    std::vector<GridBest> per_node;
    GridBest lebesgue;
  };
  const std::size_t chunks = std::min(g, std::max<std::size_t>(1, thread_count()));
  std::vector<ChunkResult> partial(chunks);
  parallel_for(chunks,
               [&](std::size_t c)
               {
                 ChunkResult& r = partial[c];
                 r.per_node.assign(n, GridBest{});
                 std::vector<double> buf(n);
                 const std::size_t begin = c * g / chunks;
                 const std::size_t end = (c + 1) * g / chunks;
                 for (std::size_t i = begin; i < end; ++i)
                 {
                   basis.abs_all(curve(grid_point(i, g)), buf);
                   double sum = 0.0;
                   for (std::size_t k = 0; k < n; ++k)
                   {
                     r.per_node[k].offer(buf[k], i);
                     sum += buf[k];
                   }
                   r.lebesgue.offer(sum, i);
                 }
               });

  // chunks cover increasing index ranges, so strict '>' keeps the smallest angle
  std::vector<GridBest> best(n);
  GridBest best_leb;
  for (const ChunkResult& r : partial)
  {
    for (std::size_t k = 0; k < n; ++k)
      best[k].offer(r.per_node[k].value, r.per_node[k].index);
    best_leb.offer(r.lebesgue.value, r.lebesgue.index);
  }

  FlipSweep sweep;
  sweep.per_node.resize(n);
  parallel_for(n,
               [&](std::size_t k)
               {
                 auto f = [&](double x) { return basis.abs_value(k, curve(x)); };
                 sweep.per_node[k] = refine(f, best[k], g, refine_iters);
               });
  auto leb = [&](double x) { return basis.lebesgue_function(curve(x)); };
  sweep.lebesgue = refine(leb, best_leb, g, refine_iters);
  return sweep;
}
//-----------------------------------------------------------------------------
Complex flip_direct(const std::vector<Complex>& points, std::size_t k, Complex z)
{
  if (k < 1 || k > points.size())
    throw std::out_of_range("flip_direct: node index out of range");
  check_distinct(points);
  const Complex eta = points[k - 1];
  Complex r{1.0, 0.0};
  for (std::size_t j = 0; j < points.size(); ++j)
    if (j != k - 1)
      r *= (z - points[j]) / (eta - points[j]);
  return r;
}
//-----------------------------------------------------------------------------
double roots_of_unity_flip_abs(std::size_t m, std::size_t k, Complex z)
{
  if (m == 0 || k < 1 || k > m)
    throw std::out_of_range("roots_of_unity_flip_abs: need 1 <= k <= m");
  const Complex zk = unit_root(2.0 * static_cast<double>(k - 1) / static_cast<double>(m));
  const double d = std::abs(z - zk);
  const double md = static_cast<double>(m);
  if (d >= near_node)
    return std::abs(ipow(z, m) - 1.0) / (md * d);

  // (z^m - 1)/(z - z_k) = sum_j z_k^{m-1-j} z^j
  Complex s{0.0, 0.0};
  Complex zp{1.0, 0.0};
  for (std::size_t j = 0; j < m; ++j)
  {
    s += ipow(zk, m - 1 - j) * zp;
    zp *= z;
  }
  return std::abs(s) / md;
}
//-----------------------------------------------------------------------------
StructuredFlip::StructuredFlip(const LejaSection& section)
    : origin_(section.origin), omega0_(omega0_of_section(section))
{
  const BinaryDecomposition d = binary_decompose(section.size());
  p1_ = d.leading();
  block_ = std::size_t{1} << p1_;
  tail_exponents_.assign(d.exponents.begin() + 1, d.exponents.end());
  for (int p : tail_exponents_)
    omega_powers_.push_back(pow2(omega0_, p));

  block_nodes_.resize(block_);
  denominators_.resize(block_);
  for (std::size_t k = 0; k < block_; ++k)
  {
    const Complex zk = section.points[k] / origin_;
    block_nodes_[k] = zk;
    double den = 1.0;
    for (std::size_t q = 0; q < tail_exponents_.size(); ++q)
      den *= std::abs(pow2(zk, tail_exponents_[q]) + omega_powers_[q]);
    denominators_[k] = den;
  }
}
//-----------------------------------------------------------------------------
double StructuredFlip::abs(std::size_t k, Complex z) const
{
  if (k < 1 || k > block_)
    throw std::out_of_range("StructuredFlip: k must lie in the leading block");
  const Complex w = z / origin_;
  const Complex zk = block_nodes_[k - 1];

  std::vector<Complex> powers(static_cast<std::size_t>(p1_) + 1);
  powers[0] = w;
  for (int j = 1; j <= p1_; ++j)
    powers[j] = powers[j - 1] * powers[j - 1];

  const double m = static_cast<double>(block_);
  const double d = std::abs(w - zk);
  double head = 0.0;
  if (d >= near_node)
    head = std::abs(powers[p1_] - 1.0) / (m * d);
  else
  {
    Complex s{0.0, 0.0};
    Complex wp{1.0, 0.0};
    for (std::size_t j = 0; j < block_; ++j)
    {
      s += ipow(zk, block_ - 1 - j) * wp;
      wp *= w;
    }
    head = std::abs(s) / m;
  }

  double num = 1.0;
  for (std::size_t q = 0; q < tail_exponents_.size(); ++q)
    num *= std::abs(powers[tail_exponents_[q]] + omega_powers_[q]);
  return head * num / denominators_[k - 1];
}
//-----------------------------------------------------------------------------
double flip_structured_abs(const LejaSection& section, std::size_t k, Complex z)
{
  return StructuredFlip(section).abs(k, z);
}
//-----------------------------------------------------------------------------
SupNormEstimate sup_norm_on_circle(const std::vector<Complex>& points, std::size_t k,
                                   std::size_t coarse_grid, int refine_iters)
{
  if (k < 1 || k > points.size())
    throw std::out_of_range("sup_norm_on_circle: node index out of range");
  const LagrangeBasis1D basis(points);
  const std::size_t g = coarse_grid == 0 ? default_grid_size(points.size()) : coarse_grid;

  std::vector<double> values(g);
  parallel_for(g, [&](std::size_t i)
               { values[i] = basis.abs_value(k - 1, circle_point(grid_point(i, g))); });
  GridBest best;
  for (std::size_t i = 0; i < g; ++i)
    best.offer(values[i], i);
  auto f = [&](double x) { return basis.abs_value(k - 1, circle_point(x)); };
  return refine(f, best, g, refine_iters);
}
//-----------------------------------------------------------------------------
LebesgueReport make_report(const FlipSweep& sweep)
{
  LebesgueReport report;
  report.N = sweep.per_node.size();
  report.constant = sweep.lebesgue.value;
  report.argmax_angle = sweep.lebesgue.argmax_angle;
  for (const SupNormEstimate& e : sweep.per_node)
    report.per_node_sup.push_back(e.value);
  return report;
}
//-----------------------------------------------------------------------------
LebesgueReport lebesgue_constant(const std::vector<Complex>& points,
                                 std::size_t coarse_grid, int refine_iters)
{
  const LagrangeBasis1D basis(points);
  return make_report(sweep_on_curve(basis, circle_point, coarse_grid, refine_iters));
}
//-----------------------------------------------------------------------------
SpecialNStatistics special_n_statistics(int p, std::size_t coarse_grid, int refine_iters)
{
  if (p < 2 || p > 30)
    throw std::invalid_argument("special_n_statistics: need 2 <= p <= 30");

  SpecialNStatistics s;
  s.p = p;
  s.N = (std::size_t{1} << p) - 1;
  const LejaSection section = canonical_disk_leja(s.N);
  const LagrangeBasis1D basis(section.points);
  const FlipSweep sweep = sweep_on_curve(basis, circle_point, coarse_grid, refine_iters);

  CompensatedSum sum;
  s.max_sup = 0.0;
  s.min_over_k = std::numeric_limits<double>::infinity();
  for (const SupNormEstimate& e : sweep.per_node)
  {
    sum.add(e.value);
    s.max_sup = std::max(s.max_sup, e.value);
    s.min_over_k = std::min(s.min_over_k, e.value);
  }
  s.sum_sup = sum.value();
  s.avg_sup = s.sum_sup / static_cast<double>(s.N);
  s.lebesgue = sweep.lebesgue.value;

  s.sum_above = s.sum_sup > static_cast<double>(s.N);
  s.max_below_2 = s.max_sup <= 2.0 + 1e-6;
  s.max_above = s.max_sup >= 4.0 * std::cos(pi / 8.0) / pi - 1e-6;
  return s;
}
//-----------------------------------------------------------------------------
SpotValue special_n_spot_value(int p1)
{
  if (p1 < 1 || p1 > 20)
    throw std::invalid_argument("special_n_spot_value: need 1 <= p1 <= 20");

  const std::size_t n = (std::size_t{2} << p1) - 1;
  const LejaSection section = canonical_disk_leja(n);
  const StructuredFlip flip(section);
  const double step = std::ldexp(1.0, -p1);
  const Complex target = flip.omega0() * unit_root(-step);

  std::size_t k = 1;
  for (std::size_t j = 1; j <= flip.block_size(); ++j)
    if (std::abs(section.points[j - 1] - target) < std::abs(section.points[k - 1] - target))
      k = j;

  const Complex z = section.points[k - 1] * unit_root(0.5 * step);
  const double angle = pi * 0.25 * step;

  SpotValue v;
  v.computed = flip.abs(k, z);
  v.closed_form = std::cos(angle) / (std::ldexp(1.0, p1) * std::sin(angle));
  return v;
}

} // namespace leja
