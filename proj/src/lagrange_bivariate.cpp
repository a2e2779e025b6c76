#include "leja/lagrange_bivariate.h"
#include "leja/parallel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leja
{

namespace
{
void check_distinct_prefix(const std::vector<Complex>& x, std::size_t count, const char* what)
{
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b)
      if (x[a] == x[b])
        throw std::invalid_argument(std::string("build_array: duplicated ") + what + " entries");
}

Complex ipow(Complex z, int e)
{
  Complex r{1.0, 0.0};
  for (int i = 0; i < e; ++i)
    r *= z;
  return r;
}

Complex monomial(std::size_t j, Complex z, Complex w)
{
  const LexIndex li = lex_to_pair(j);
  return ipow(z, li.k) * ipow(w, li.l);
}

double torus_angle(std::size_t i, std::size_t grid)
{
  return -1.0 + 2.0 * static_cast<double>(i + 1) / static_cast<double>(grid);
}

/// Dense complex LU with partial pivoting, row-major n x n, in place.
/// Flags the matrix singular when a pivot is exactly zero.
struct LuResult
{
  LogProduct det;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LuResult lu_factor(std::vector<Complex>& a, std::size_t n)
{
  LuResult r;
  r.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    r.perm[i] = i;
  double phase = 0.0;
  for (std::size_t col = 0; col < n; ++col)
  {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a[i * n + col]) > std::abs(a[piv * n + col]))
        piv = i;
    if (a[piv * n + col] == Complex{0.0, 0.0})
    {
      r.singular = true;
      r.det.log_magnitude = -std::numeric_limits<double>::infinity();
      r.det.phase = 0.0;
      return r;
    }
    if (piv != col)
    {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[piv * n + j], a[col * n + j]);
      std::swap(r.perm[piv], r.perm[col]);
      phase += pi;
    }
    const Complex d = a[col * n + col];
    r.det.log_magnitude += std::log(std::abs(d));
    phase += std::arg(d);
    for (std::size_t i = col + 1; i < n; ++i)
    {
      const Complex f = a[i * n + col] / d;
      a[i * n + col] = f;
      for (std::size_t j = col + 1; j < n; ++j)
        a[i * n + j] -= f * a[col * n + j];
    }
  }
  phase = std::remainder(phase, 2.0 * pi);
  if (phase <= -pi)
    phase += 2.0 * pi;
  r.det.phase = phase;
  return r;
}

/// Solves A x = b given lu_factor output.
std::vector<Complex> lu_solve(const std::vector<Complex>& lu, const LuResult& f,
                              std::span<const Complex> b)
{
  const std::size_t n = f.perm.size();
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      x[i] -= lu[i * n + j] * x[j];
  for (std::size_t i = n; i-- > 0;)
  {
    for (std::size_t j = i + 1; j < n; ++j)
      x[i] -= lu[i * n + j] * x[j];
    x[i] /= lu[i * n + i];
  }
  return x;
}

/// Z(p, a) for a = -1..n as table[a + 1].
void prefix_table(const std::vector<Complex>& x, int p, int n, Complex z,
                  std::span<Complex> table)
{
  table[0] = {1.0, 0.0};
  for (int a = 0; a <= n; ++a)
    table[a + 1] = (a == p) ? table[a] : table[a] * (z - x[a]) / (x[p] - x[a]);
}

double shortfall(double value, double best)
{
  if (best <= 0.0)
    return 0.0;
  return std::max(0.0, 1.0 - value / best);
}
} // namespace
//-----------------------------------------------------------------------------
LexIndex lex_to_pair(std::size_t j)
{
  if (j == 0)
    throw std::invalid_argument("lex_to_pair: j must be >= 1");
  int s = 0;
  while (full_block_size(s) < j)
    ++s;
  const std::size_t r = j - full_block_size(s - 1) - 1;
  return {j, s - static_cast<int>(r), static_cast<int>(r)};
}
//-----------------------------------------------------------------------------
std::size_t pair_to_lex(int k, int l)
{
  if (k < 0 || l < 0)
    throw std::invalid_argument("pair_to_lex: exponents must be >= 0");
  return full_block_size(k + l - 1) + static_cast<std::size_t>(l) + 1;
}
//-----------------------------------------------------------------------------
std::size_t full_block_size(int n)
{
  if (n < 0)
    return 0;
  const auto u = static_cast<std::size_t>(n);
  return (u + 1) * (u + 2) / 2;
}
//-----------------------------------------------------------------------------
Shape shape_of(std::size_t N)
{
  if (N == 0)
    throw std::invalid_argument("shape_of: N must be >= 1");
  int n = 0;
  while (full_block_size(n) < N)
    ++n;
  return {n, static_cast<int>(N - full_block_size(n - 1) - 1)};
}
//-----------------------------------------------------------------------------
IntertwiningArray build_array(std::vector<Complex> eta, std::vector<Complex> theta,
                              std::size_t N)
{
  const Shape s = shape_of(N);
  const auto need = static_cast<std::size_t>(s.n) + 1;
  if (eta.size() < need || theta.size() < need)
    throw std::invalid_argument("build_array: need n+1 points in each source sequence");
  check_distinct_prefix(eta, need, "eta");
  check_distinct_prefix(theta, need, "theta");

  IntertwiningArray a;
  a.eta = std::move(eta);
  a.theta = std::move(theta);
  a.N = N;
  a.n = s.n;
  a.m = s.m;
  for (std::size_t j = 1; j <= N; ++j)
  {
    const LexIndex li = lex_to_pair(j);
    a.index.push_back(li);
    a.nodes.push_back({a.eta[li.k], a.theta[li.l]});
  }
  return a;
}
//-----------------------------------------------------------------------------
FlipFormula flip_formula(int n, int m, int p, int q)
{
  FlipFormula f;
  auto add = [&f](int sign, int a, int b) { f.terms.push_back({sign, a, b}); };
  // sum_r [Z(zu(r)) W(q + r + 1) - Z(zu(r)) W(q + r)]
  auto add_sum = [&](int r_lo, int r_hi, auto z_upper)
  {
    for (int r = r_lo; r <= r_hi; ++r)
    {
      add(+1, z_upper(r), q + r + 1);
      add(-1, z_upper(r), q + r);
    }
  };
  auto add_head = [&](int z_hi, int z_lo)
  {
    add(+1, z_hi, q - 1);
    add(-1, z_lo, q - 1);
    add(+1, z_lo, q + 1);
  };

  if (p + q == n || (p + q == n - 1 && q >= m + 1))
  {
    f.case_id = 1;
    add(+1, p - 1, q - 1);
  }
  else if (p + q == n - 1 && q == m)
  {
    f.case_id = 2;
    add(+1, n - m, m - 1);
  }
  else if (p + q == n - 1)
  {
    f.case_id = 3;
    add(+1, p + 1, q - 1);
    add(-1, p - 1, q - 1);
    add(+1, p - 1, q + 1);
  }
  else if (q <= m - 1 && p <= n - m - 1)
  {
    f.case_id = 4;
    add_head(n - q, n - q - 1);
    add_sum(1, m - q - 1, [&](int r) { return n - q - r - 1; });
    add_sum(m - q, n - p - q - 2, [&](int r) { return n - q - r - 2; });
  }
  else if (q <= m - 1)
  {
    f.case_id = 5;
    add_head(n - q, n - q - 1);
    add_sum(1, n - p - q - 1, [&](int r) { return n - q - r - 1; });
  }
  else if (q == m)
  {
    f.case_id = 6;
    add_head(n - m, n - m - 2);
    add_sum(1, n - m - p - 2, [&](int r) { return n - m - r - 2; });
  }
  else
  {
    f.case_id = 7;
    add_head(n - q - 1, n - q - 2);
    add_sum(1, n - p - q - 2, [&](int r) { return n - q - r - 2; });
  }

  for (const FlipTerm& t : f.terms)
    if (t.z_upper < -1 || t.z_upper > n || t.w_upper < -1 || t.w_upper > n)
      throw std::logic_error("flip_formula: product bound out of range");
  return f;
}
//-----------------------------------------------------------------------------
BivariateBasis::BivariateBasis(IntertwiningArray array) : array_(std::move(array))
{
  for (const LexIndex& li : array_.index)
    formulas_.push_back(flip_formula(array_.n, array_.m, li.k, li.l));
}
//-----------------------------------------------------------------------------
Complex BivariateBasis::value(std::size_t node, Complex z, Complex w) const
{
  const int n = array_.n;
  const LexIndex& li = array_.index.at(node);
  std::vector<Complex> zt(static_cast<std::size_t>(n) + 2);
  std::vector<Complex> wt(static_cast<std::size_t>(n) + 2);
  prefix_table(array_.eta, li.k, n, z, zt);
  prefix_table(array_.theta, li.l, n, w, wt);
  Complex s{0.0, 0.0};
  for (const FlipTerm& t : formulas_[node].terms)
    s += static_cast<double>(t.sign) * zt[t.z_upper + 1] * wt[t.w_upper + 1];
  return s;
}
//-----------------------------------------------------------------------------
void BivariateBasis::values(Complex z, Complex w, std::span<Complex> out) const
{
  const int n = array_.n;
  const auto width = static_cast<std::size_t>(n) + 2;
  std::vector<Complex> zt(width * width);
  std::vector<Complex> wt(width * width);
  for (int p = 0; p <= n; ++p)
  {
    prefix_table(array_.eta, p, n, z, std::span(zt).subspan(p * width, width));
    prefix_table(array_.theta, p, n, w, std::span(wt).subspan(p * width, width));
  }
  for (std::size_t node = 0; node < array_.N; ++node)
  {
    const LexIndex& li = array_.index[node];
    const Complex* zr = zt.data() + li.k * width;
    const Complex* wr = wt.data() + li.l * width;
    Complex s{0.0, 0.0};
    for (const FlipTerm& t : formulas_[node].terms)
      s += static_cast<double>(t.sign) * zr[t.z_upper + 1] * wr[t.w_upper + 1];
    out[node] = s;
  }
}
//-----------------------------------------------------------------------------
Complex bivariate_flip(const IntertwiningArray& array, int p, int q, Complex z, Complex w,
                       int* fired_case)
{
  if (p < 0 || q < 0 || pair_to_lex(p, q) > array.N)
    throw std::invalid_argument("bivariate_flip: (p, q) is not a node of the array");
  const FlipFormula f = flip_formula(array.n, array.m, p, q);
  if (fired_case)
    *fired_case = f.case_id;

  const int n = array.n;
  std::vector<Complex> zt(static_cast<std::size_t>(n) + 2);
  std::vector<Complex> wt(static_cast<std::size_t>(n) + 2);
  prefix_table(array.eta, p, n, z, zt);
  prefix_table(array.theta, q, n, w, wt);
  Complex s{0.0, 0.0};
  for (const FlipTerm& t : f.terms)
    s += static_cast<double>(t.sign) * zt[t.z_upper + 1] * wt[t.w_upper + 1];
  return s;
}
//-----------------------------------------------------------------------------
std::array<std::size_t, 8> case_histogram(const IntertwiningArray& array)
{
  std::array<std::size_t, 8> h{};
  for (const LexIndex& li : array.index)
    ++h[flip_formula(array.n, array.m, li.k, li.l).case_id];
  return h;
}
//-----------------------------------------------------------------------------
Complex interpolate(const BivariateBasis& basis, std::span<const Complex> values, Complex z,
                    Complex w)
{
  if (values.size() != basis.size())
    throw std::invalid_argument("interpolate: one value per node required");
  std::vector<Complex> l(basis.size());
  basis.values(z, w, l);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < l.size(); ++i)
    s += values[i] * l[i];
  return s;
}
//-----------------------------------------------------------------------------
Complex interpolate(const IntertwiningArray& array, const BivariateFunction& f, Complex z,
                    Complex w)
{
  const BivariateBasis basis(array);
  std::vector<Complex> v;
  for (const BivariatePoint& h : array.nodes)
    v.push_back(f(h.z, h.w));
  return interpolate(basis, v, z, w);
}
//-----------------------------------------------------------------------------
std::vector<double> bivariate_flip_sups(const IntertwiningArray& array, std::size_t grid)
{
  if (grid == 0)
    throw std::invalid_argument("bivariate_flip_sups: grid must be nonempty");
  const BivariateBasis basis(array);
  const std::size_t n = basis.size();
  std::vector<std::vector<double>> rows(grid);
  parallel_for(grid,
               [&](std::size_t i)
               {
                 const Complex z = unit_root(torus_angle(i, grid));
                 std::vector<double>& best = rows[i];
                 best.assign(n, 0.0);
                 std::vector<Complex> l(n);
                 for (std::size_t j = 0; j < grid; ++j)
                 {
                   basis.values(z, unit_root(torus_angle(j, grid)), l);
                   for (std::size_t k = 0; k < n; ++k)
                     best[k] = std::max(best[k], std::abs(l[k]));
                 }
               });
  std::vector<double> sups(n, 0.0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < n; ++k)
      sups[k] = std::max(sups[k], r[k]);
  return sups;
}
//-----------------------------------------------------------------------------
double bivariate_lebesgue(const IntertwiningArray& array, std::size_t grid)
{
  if (grid == 0)
    throw std::invalid_argument("bivariate_lebesgue: grid must be nonempty");
  const BivariateBasis basis(array);
  std::vector<double> rows(grid, 0.0);
  parallel_for(grid,
               [&](std::size_t i)
               {
                 const Complex z = unit_root(torus_angle(i, grid));
                 std::vector<Complex> l(basis.size());
                 for (std::size_t j = 0; j < grid; ++j)
                 {
                   basis.values(z, unit_root(torus_angle(j, grid)), l);
                   double s = 0.0;
                   for (const Complex& v : l)
                     s += std::abs(v);
                   rows[i] = std::max(rows[i], s);
                 }
               });
  return *std::max_element(rows.begin(), rows.end());
}
//-----------------------------------------------------------------------------
double degree_violation(const BivariateBasis& basis, std::size_t node)
{
  const IntertwiningArray& a = basis.array();
  const int n = a.n;
  const std::size_t M = 2 * static_cast<std::size_t>(n) + 2;
  const double inv = 1.0 / static_cast<double>(M);

  std::vector<Complex> f(M * M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j)
      f[i * M + j] = basis.value(node, unit_root(2.0 * static_cast<double>(i) * inv),
                                 unit_root(2.0 * static_cast<double>(j) * inv));

  double largest = 0.0;
  double outside = 0.0;
  for (std::size_t s = 0; s < M; ++s)
    for (std::size_t t = 0; t < M; ++t)
    {
      Complex c{0.0, 0.0};
      for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
          c += f[i * M + j] * unit_root(-2.0 * static_cast<double>((i * s + j * t) % M) * inv);
      const double mag = std::abs(c) * inv * inv;
      largest = std::max(largest, mag);
      const auto deg = static_cast<int>(s + t);
      if (deg > n || (deg == n && static_cast<int>(t) > a.m))
        outside = std::max(outside, mag);
    }
  return outside / std::max(1.0, largest);
}
//-----------------------------------------------------------------------------
LogProduct vdm_log_determinant(std::span<const BivariatePoint> points)
{
  const std::size_t n = points.size();
  if (n == 0)
    return {};
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = monomial(i + 1, points[j].z, points[j].w);
  return lu_factor(a, n).det;
}
//-----------------------------------------------------------------------------
Complex vdm_determinant(std::span<const BivariatePoint> points)
{
  return vdm_log_determinant(points).value();
}
//-----------------------------------------------------------------------------
Complex flip_via_vdm_ratio(const IntertwiningArray& array, std::size_t node, Complex z,
                           Complex w, std::size_t cap)
{
  if (array.N > cap)
    throw std::invalid_argument("flip_via_vdm_ratio: N exceeds the oracle cap");
  if (node < 1 || node > array.N)
    throw std::out_of_range("flip_via_vdm_ratio: node index out of range");

  const LogProduct den = vdm_log_determinant(array.nodes);
  if (den.log_magnitude < std::log(1e-250))
    throw std::runtime_error("flip_via_vdm_ratio: ill-conditioned denominator");
  std::vector<BivariatePoint> replaced(array.nodes);
  replaced[node - 1] = {z, w};
  const LogProduct num = vdm_log_determinant(replaced);
  if (num.is_zero())
    return {0.0, 0.0};
  return std::polar(std::exp(num.log_magnitude - den.log_magnitude), num.phase - den.phase);
}
//-----------------------------------------------------------------------------
Complex vdm_extension_factor(const IntertwiningArray& array, Complex z, Complex w)
{
  const int n = array.n;
  const int m = array.m;
  Complex f{1.0, 0.0};
  if (array.N == full_block_size(n))
  {
    for (int j = 0; j <= n; ++j)
      f *= z - array.eta[j];
    return f;
  }
  for (int j = 0; j <= n - m - 2; ++j)
    f *= z - array.eta[j];
  for (int i = 0; i <= m; ++i)
    f *= w - array.theta[i];
  return f;
}
//-----------------------------------------------------------------------------
Complex schiffer_siciak(std::span<const Complex> eta, std::span<const Complex> theta, int n)
{
  if (n < 0 || eta.size() < static_cast<std::size_t>(n) + 1
      || theta.size() < static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("schiffer_siciak: need n+1 points in each source");
  Complex r{1.0, 0.0};
  // VDM(x_0..x_j) = VDM(x_0..x_{j-1}) * prod_{a<j} (x_j - x_a), so the
  // product over j of the 1D determinants collects each (x_b - x_a) n - b + 1 times
  for (int b = 1; b <= n; ++b)
    for (int a = 0; a < b; ++a)
    {
      const Complex f = (eta[b] - eta[a]) * (theta[b] - theta[a]);
      for (int rep = b; rep <= n; ++rep)
        r *= f;
    }
  return r;
}
//-----------------------------------------------------------------------------
Leja2DReport verify_2d_leja(std::span<const Complex> eta, std::span<const Complex> theta,
                            std::size_t N_max, std::size_t grid)
{
  if (grid == 0)
    throw std::invalid_argument("verify_2d_leja: grid must be nonempty");
  std::vector<Complex> circle(grid);
  for (std::size_t i = 0; i < grid; ++i)
    circle[i] = unit_root(torus_angle(i, grid));

  // sup over the circle grid of prod_{j<count} |x - src_j|
  auto grid_sup = [&](std::span<const Complex> src, std::size_t count)
  {
    double best = -std::numeric_limits<double>::infinity();
    for (const Complex& c : circle)
      best = std::max(best, log_abs_product(src.first(count), c));
    return best;
  };

  Leja2DReport report;
  for (std::size_t N = 1; N < N_max; ++N)
  {
    const Shape s = shape_of(N);
    const LexIndex next = lex_to_pair(N + 1);
    if (static_cast<std::size_t>(std::max(next.k, next.l)) >= std::min(eta.size(), theta.size()))
      throw std::invalid_argument("verify_2d_leja: source sequences too short");

    const Complex hz = eta[next.k];
    const Complex hw = theta[next.l];
    double value = 0.0;
    double best = 0.0;
    if (N == full_block_size(s.n))
    {
      const auto cz = static_cast<std::size_t>(s.n) + 1;
      value = log_abs_product(eta.first(cz), hz);
      best = grid_sup(eta, cz);
    }
    else
    {
      const auto cz = static_cast<std::size_t>(std::max(0, s.n - s.m - 1));
      const auto cw = static_cast<std::size_t>(s.m) + 1;
      value = log_abs_product(eta.first(cz), hz) + log_abs_product(theta.first(cw), hw);
      best = grid_sup(eta, cz) + grid_sup(theta, cw);
    }
    const double sf = std::max(0.0, -std::expm1(value - best));
    if (sf > report.max_shortfall || report.worst_N == 0)
    {
      if (sf > report.max_shortfall)
        report.max_shortfall = sf;
      report.worst_N = N;
    }
  }
  return report;
}
//-----------------------------------------------------------------------------
Leja2DReport verify_leja_order(std::span<const BivariatePoint> nodes, std::size_t N_max,
                               std::size_t grid)
{
  if (grid == 0)
    throw std::invalid_argument("verify_leja_order: grid must be nonempty");
  if (nodes.size() < N_max)
    throw std::invalid_argument("verify_leja_order: need N_max nodes");

  Leja2DReport report;
  for (std::size_t N = 1; N < N_max; ++N)
  {
    // coefficients c with sum_i c_i e_i(H_j) = e_{N+1}(H_j), i.e. V^T c = b
    std::vector<Complex> vt(N * N);
    std::vector<Complex> rhs(N);
    for (std::size_t j = 0; j < N; ++j)
    {
      for (std::size_t i = 0; i < N; ++i)
        vt[j * N + i] = monomial(i + 1, nodes[j].z, nodes[j].w);
      rhs[j] = monomial(N + 1, nodes[j].z, nodes[j].w);
    }
    const LuResult lu = lu_factor(vt, N);
    double sf = 1.0;
    if (!lu.singular)
    {
      const std::vector<Complex> c = lu_solve(vt, lu, rhs);
      auto residual = [&](Complex z, Complex w)
      {
        Complex r = monomial(N + 1, z, w);
        for (std::size_t i = 0; i < N; ++i)
          r -= c[i] * monomial(i + 1, z, w);
        return std::abs(r);
      };
      std::vector<double> rows(grid, 0.0);
      parallel_for(grid,
                   [&](std::size_t i)
                   {
                     const Complex z = unit_root(torus_angle(i, grid));
                     for (std::size_t j = 0; j < grid; ++j)
                       rows[i] = std::max(rows[i], residual(z, unit_root(torus_angle(j, grid))));
                   });
      sf = shortfall(residual(nodes[N].z, nodes[N].w),
                     *std::max_element(rows.begin(), rows.end()));
    }
    if (sf > report.max_shortfall || report.worst_N == 0)
    {
      if (sf > report.max_shortfall)
        report.max_shortfall = sf;
      report.worst_N = N;
    }
    if (lu.singular)
      break;
  }
  return report;
}
//-----------------------------------------------------------------------------
std::vector<DecayRow> jackson_decay_experiment(const BivariateFunction& f,
                                               std::span<const Complex> eta,
                                               std::span<const Complex> theta, int n_min,
                                               int n_max, std::size_t grid)
{
  if (n_min < 0 || n_max < n_min || grid == 0)
    throw std::invalid_argument("jackson_decay_experiment: bad range or grid");

  std::vector<DecayRow> table;
  for (int n = n_min; n <= n_max; ++n)
  {
    const std::size_t N = full_block_size(n);
    const BivariateBasis basis(build_array({eta.begin(), eta.end()},
                                           {theta.begin(), theta.end()}, N));
    std::vector<Complex> values;
    for (const BivariatePoint& h : basis.array().nodes)
      values.push_back(f(h.z, h.w));

    std::vector<double> rows(grid, 0.0);
    parallel_for(grid,
                 [&](std::size_t i)
                 {
                   const Complex z = unit_root(torus_angle(i, grid));
                   std::vector<Complex> l(N);
                   for (std::size_t j = 0; j < grid; ++j)
                   {
                     const Complex w = unit_root(torus_angle(j, grid));
                     basis.values(z, w, l);
                     Complex s{0.0, 0.0};
                     for (std::size_t k = 0; k < N; ++k)
                       s += values[k] * l[k];
                     rows[i] = std::max(rows[i], std::abs(f(z, w) - s));
                   }
                 });
    table.push_back({n, N, *std::max_element(rows.begin(), rows.end())});
  }
  return table;
}

} // namespace leja
