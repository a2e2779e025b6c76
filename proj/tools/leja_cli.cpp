// Command-line front end for the experiments. Exit codes: 0 success,
// 1 usage error, 2 a bound or identity failed.

#include "leja/conformal_transport.h"
#include "leja/flip_univariate.h"
#include "leja/lagrange_bivariate.h"
#include "leja/leja_disk.h"
#include "leja/parallel.h"
#include "leja/serialize.h"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace leja;

namespace
{
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_failed = 2;

const double uniform_bound = pi * std::exp(3.0 * pi);
const double bivariate_constant = pi * pi * std::exp(6.0 * pi);

struct Range
{
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text)
{
  static const std::regex pattern(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw CLI::ValidationError("range", "expected LO..HI or a single integer, got " + text);
  Range r;
  r.lo = std::stoi(m[1]);
  r.hi = m[2].matched ? std::stoi(m[2]) : r.lo;
  if (r.hi < r.lo)
    throw CLI::ValidationError("range", "empty range " + text);
  return r;
}

struct Common
{
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void emit(const Common& c, const std::string& csv, const Json& json)
{
  const std::string text = c.format == "json" ? json.dump(2) + "\n" : csv;
  if (c.output.empty() || c.output == "-")
  {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out)
    throw std::runtime_error("cannot open output file " + c.output);
  out << text;
}

std::string num(double x)
{
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

//-----------------------------------------------------------------------------
struct LejaArgs
{
  bool disk = false;
  std::vector<double> ellipse;
  bool greedy = false;
  bool random = false;
  std::size_t n = 0;
  std::size_t samples = 0;
  double tol = 0.0;
};

int cmd_leja(const Common& c, const LejaArgs& a)
{
  if (a.disk == !a.ellipse.empty())
    throw CLI::ValidationError("leja", "choose exactly one of --disk and --ellipse");

  const std::size_t samples = a.samples ? a.samples : std::max<std::size_t>(4096, 64 * a.n);
  BoundarySamples boundary = a.disk ? circle_samples(samples)
                                    : ellipse_samples(a.ellipse[0], a.ellipse[1], samples);
  LejaSection section;
  bool greedy = a.greedy || !a.ellipse.empty();
  if (greedy)
    section = greedy_leja(boundary, a.n, 0);
  else if (a.random)
    section = random_disk_leja(a.n, c.seed);
  else
    section = canonical_disk_leja(a.n);

  const double tol = a.tol > 0.0 ? a.tol : (greedy ? 10.0 / static_cast<double>(samples) : 1e-6);
  const LejaValidation v = validate_leja(section, boundary, tol);

  Json j = section_to_json(section);
  j["validation"] = {{"max_violation", v.max_violation},
                     {"worst_k", v.worst_k},
                     {"rel_tol", tol},
                     {"samples", samples},
                     {"passed", v.passed}};
  emit(c, section_to_csv(section), j);
  std::cerr << "validation: " << boundary.description << ", max_violation " << v.max_violation
            << " at k = " << v.worst_k << ", tol " << tol << (v.passed ? ", pass" : ", FAIL")
            << "\n";
  return v.passed ? exit_ok : exit_failed;
}

//-----------------------------------------------------------------------------
struct BoundsArgs
{
  std::size_t max_n = 64;
  bool special = false;
  std::string p = "2..8";
  bool avg = false;
  std::size_t grid = 0;
  int refine = 40;
};

int cmd_bounds(const Common& c, const BoundsArgs& a)
{
  bool ok = true;
  Json rows = Json::array();
  std::string csv;
  if (!a.special)
  {
    csv = "N,max_sup,lebesgue,uniform_margin,lebesgue_margin\n";
    for (std::size_t n = 1; n <= a.max_n; ++n)
    {
      const LebesgueReport r = lebesgue_constant(canonical_disk_leja(n).points, a.grid, a.refine);
      const double max_sup = *std::max_element(r.per_node_sup.begin(), r.per_node_sup.end());
      const double m1 = uniform_bound - max_sup;
      const double m2 = 2.0 * static_cast<double>(n) - r.constant;
      ok = ok && m1 >= -1e-6 && m2 >= -1e-6;
      csv += std::to_string(n) + "," + num(max_sup) + "," + num(r.constant) + "," + num(m1) + ","
             + num(m2) + "\n";
      rows.push_back({{"N", n},
                      {"max_sup", max_sup},
                      {"lebesgue", r.constant},
                      {"uniform_margin", m1},
                      {"lebesgue_margin", m2}});
    }
  }
  else
  {
    const Range p = parse_range(a.p);
    if (p.lo < 2)
      throw CLI::ValidationError("--p", "special-N mode needs p >= 2");
    csv = "p,N,lebesgue,expected,sum_sup,avg_sup,max_sup,min_sup\n";
    std::vector<double> avgs;
    for (int q = p.lo; q <= p.hi; ++q)
    {
      const SpecialNStatistics s = special_n_statistics(q, a.grid, a.refine);
      const double expected = static_cast<double>(s.N);
      ok = ok && s.holds() && std::abs(s.lebesgue - expected) <= 1e-6 * expected;
      avgs.push_back(s.avg_sup);
      csv += std::to_string(q) + "," + std::to_string(s.N) + "," + num(s.lebesgue) + ","
             + num(expected) + "," + num(s.sum_sup) + "," + num(s.avg_sup) + "," + num(s.max_sup)
             + "," + num(s.min_over_k) + "\n";
      rows.push_back({{"p", q},
                      {"N", s.N},
                      {"lebesgue", s.lebesgue},
                      {"expected", expected},
                      {"sum_sup", s.sum_sup},
                      {"avg_sup", s.avg_sup},
                      {"max_sup", s.max_sup},
                      {"min_sup", s.min_over_k}});
    }
    if (a.avg)
    {
      const bool above = std::all_of(avgs.begin(), avgs.end(), [](double v) { return v > 1.0; });
      const bool trend = avgs.size() < 2 || avgs.back() < avgs.front();
      std::cerr << "avg_sup: all above 1 " << (above ? "yes" : "NO") << ", last < first "
                << (trend ? "yes" : "NO") << "\n";
      ok = ok && above && trend;
    }
  }
  emit(c, csv, Json{{"rows", rows}, {"passed", ok}});
  std::cerr << (ok ? "all bounds hold\n" : "BOUND VIOLATION\n");
  return ok ? exit_ok : exit_failed;
}

//-----------------------------------------------------------------------------
struct BivariateArgs
{
  bool delta = false;
  bool oracle = false;
  bool factorization = false;
  bool verify = false;
  bool lebesgue = false;
  bool decay = false;
  std::size_t n_max = 15;
  std::string degrees = "2..10";
  std::size_t grid = 128;
};

int cmd_bivariate(const Common& c, const BivariateArgs& a)
{
  if (!(a.delta || a.oracle || a.factorization || a.verify || a.lebesgue || a.decay))
    throw CLI::ValidationError("bivariate", "select at least one experiment");

  const Range deg = parse_range(a.degrees);
  const std::size_t source_len = std::max<std::size_t>(a.n_max, static_cast<std::size_t>(deg.hi)) + 2;
  const std::vector<Complex> eta = canonical_disk_leja(source_len).points;
  const std::vector<Complex> theta = eta;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_point = [&] { return std::polar(std::sqrt(u(rng)), 2.0 * pi * u(rng)); };

  bool ok = true;
  std::vector<TableRow> table;
  Json summary = Json::object();

  if (a.delta)
  {
    std::size_t violations = 0;
    std::array<std::size_t, 8> cases{};
    for (std::size_t N = 1; N <= a.n_max; ++N)
    {
      const BivariateBasis basis(build_array(eta, theta, N));
      const auto h = case_histogram(basis.array());
      for (int k = 1; k <= 7; ++k)
        cases[k] += h[k];
      double worst = 0.0;
      for (std::size_t i = 0; i < N; ++i)
      {
        for (std::size_t j = 0; j < N; ++j)
        {
          const BivariatePoint& node = basis.array().nodes[j];
          const double err = std::abs(basis.value(i, node.z, node.w) - (i == j ? 1.0 : 0.0));
          violations += err > 1e-10;
          worst = std::max(worst, err);
        }
        const double leak = degree_violation(basis, i);
        violations += leak > 1e-10;
      }
      table.push_back({basis.array().n, N, worst});
    }
    summary["delta_violations"] = violations;
    summary["case_counts"] = std::vector<std::size_t>(cases.begin() + 1, cases.end());
    std::cerr << "delta/degree violations: " << violations << "; case counts";
    for (int k = 1; k <= 7; ++k)
      std::cerr << ' ' << k << ':' << cases[k];
    std::cerr << "\n";
    ok = ok && violations == 0;
  }

  if (a.oracle)
  {
    double worst = 0.0;
    for (std::size_t N = 1; N <= std::min(a.n_max, default_oracle_cap); ++N)
    {
      const IntertwiningArray array = build_array(eta, theta, N);
      double row = 0.0;
      for (int s = 0; s < 16; ++s)
      {
        const Complex z = random_point();
        const Complex w = random_point();
        for (std::size_t node = 1; node <= N; ++node)
        {
          const LexIndex li = array.index[node - 1];
          const Complex ref = flip_via_vdm_ratio(array, node, z, w);
          row = std::max(row, std::abs(bivariate_flip(array, li.k, li.l, z, w) - ref) / std::abs(ref));
        }
      }
      worst = std::max(worst, row);
      table.push_back({array.n, N, row});
    }
    summary["oracle_max_rel_diff"] = worst;
    std::cerr << "oracle max rel diff: " << worst << "\n";
    ok = ok && worst <= 1e-8;
  }

  if (a.factorization)
  {
    double worst = 0.0;
    for (std::size_t N = 1; N <= std::min<std::size_t>(a.n_max, 15); ++N)
    {
      const IntertwiningArray array = build_array(eta, theta, N);
      const LogProduct base = vdm_log_determinant(array.nodes);
      double row = 0.0;
      for (int s = 0; s < 16; ++s)
      {
        std::vector<BivariatePoint> ext(array.nodes);
        ext.push_back({random_point(), random_point()});
        const LogProduct top = vdm_log_determinant(ext);
        const Complex ratio
            = std::polar(std::exp(top.log_magnitude - base.log_magnitude), top.phase - base.phase);
        row = std::max(row, std::abs(vdm_extension_factor(array, ext.back().z, ext.back().w) - ratio)
                                / std::abs(ratio));
      }
      worst = std::max(worst, row);
      table.push_back({array.n, N, row});
    }
    summary["factorization_max_rel_diff"] = worst;
    std::cerr << "factorization max rel diff: " << worst << "\n";
    ok = ok && worst <= 1e-8;
  }

  if (a.verify)
  {
    const Leja2DReport r = verify_2d_leja(eta, theta, a.n_max + 1, 512);
    summary["leja2d_max_shortfall"] = r.max_shortfall;
    summary["leja2d_worst_N"] = r.worst_N;
    std::cerr << "2D Leja check up to N = " << a.n_max << ": max shortfall " << r.max_shortfall
              << (r.passed(1e-6) ? ", pass" : ", FAIL") << "\n";
    table.push_back({shape_of(a.n_max).n, a.n_max, r.max_shortfall});
    ok = ok && r.passed(1e-6);
  }

  if (a.lebesgue)
  {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int n = deg.lo; n <= deg.hi; ++n)
    {
      const std::size_t N = full_block_size(n);
      const double lambda = bivariate_lebesgue(build_array(eta, theta, N), a.grid);
      ok = ok && lambda <= bivariate_constant * n * (n + 1) * (n + 2);
      table.push_back({n, N, lambda});
      xs.push_back(static_cast<double>(N));
      ys.push_back(lambda);
    }
    if (xs.size() >= 2)
    {
      const double slope = loglog_slope(xs, ys);
      summary["lebesgue_loglog_slope"] = slope;
      std::cerr << "fitted log-log slope of Lambda vs N: " << slope << " (theory exponent 1.5)\n";
    }
  }

  if (a.decay)
  {
    const auto rows = jackson_decay_experiment(
        [](Complex z, Complex w) { return std::exp(z + w); }, eta, theta, deg.lo, deg.hi, a.grid);
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
      table.push_back({rows[i].n, rows[i].N, rows[i].sup_error});
      if (i > 0)
        decreasing = decreasing && rows[i].sup_error < rows[i - 1].sup_error;
    }
    summary["decay_strictly_decreasing"] = decreasing;
    std::cerr << "exp(z+w) error strictly decreasing: " << (decreasing ? "yes" : "NO") << "\n";
    ok = ok && decreasing;
  }

  Json rows = Json::array();
  for (const TableRow& r : table)
    rows.push_back({{"n", r.n}, {"N", r.N}, {"value", r.value}});
  summary["rows"] = rows;
  summary["passed"] = ok;
  emit(c, table_to_csv(table), summary);
  return ok ? exit_ok : exit_failed;
}

//-----------------------------------------------------------------------------
struct TransportArgs
{
  std::vector<double> ellipse{1.2, 0.8};
  std::size_t max_n = 64;
  bool alper = false;
  std::size_t w_grid = 256;
  std::size_t t_grid = 1024;
  std::size_t grid = 0;
  int refine = 40;
};

int cmd_transport(const Common& c, const TransportArgs& a)
{
  const ExteriorMap map = ellipse_exterior_map(a.ellipse[0], a.ellipse[1]);
  const bool identity = map.c2 == 0.0 && map.c1 == 1.0;
  bool ok = true;

  if (a.alper)
  {
    const AlperStudy s = alper_grid_study(map, a.w_grid, a.t_grid);
    std::cerr << "Alper constant: " << s.coarse << " (grids " << a.w_grid << "x" << a.t_grid
              << "), " << s.fine << " (doubled), change " << s.change() << "\n";
    if (identity)
      ok = std::abs(s.fine) <= 1e-6 && std::abs(s.coarse) <= 1e-6;
    const std::string csv = "w_grid,t_grid,A\n" + std::to_string(a.w_grid) + ","
                            + std::to_string(a.t_grid) + "," + num(s.coarse) + "\n"
                            + std::to_string(2 * a.w_grid) + "," + std::to_string(2 * a.t_grid)
                            + "," + num(s.fine) + "\n";
    emit(c, csv,
         {{"map", map_to_json(map)},
          {"A_coarse", s.coarse},
          {"A_fine", s.fine},
          {"change", s.change()},
          {"passed", ok}});
    return ok ? exit_ok : exit_failed;
  }

  std::string csv = "N,max_sup,lebesgue\n";
  Json rows = Json::array();
  std::vector<double> xs;
  std::vector<double> ys;
  double identity_gap = 0.0;
  for (std::size_t n = 1; n <= a.max_n; ++n)
  {
    const LejaSection section = canonical_disk_leja(n);
    const FlipSweep sweep = transported_sweep(transport_sequence(map, section), a.grid, a.refine);
    double max_sup = 0.0;
    for (const SupNormEstimate& e : sweep.per_node)
      max_sup = std::max(max_sup, e.value);
    ok = ok && std::isfinite(max_sup) && std::isfinite(sweep.lebesgue.value);
    if (identity)
    {
      const LebesgueReport disk = lebesgue_constant(section.points, a.grid, a.refine);
      identity_gap = std::max(identity_gap, std::abs(disk.constant - sweep.lebesgue.value));
      for (std::size_t k = 0; k < n; ++k)
        identity_gap = std::max(identity_gap, std::abs(disk.per_node_sup[k] - sweep.per_node[k].value));
    }
    csv += std::to_string(n) + "," + num(max_sup) + "," + num(sweep.lebesgue.value) + "\n";
    rows.push_back({{"N", n}, {"max_sup", max_sup}, {"lebesgue", sweep.lebesgue.value}});
    if (n >= 2)
    {
      xs.push_back(static_cast<double>(n));
      ys.push_back(max_sup);
    }
  }
  Json summary{{"map", map_to_json(map)}, {"rows", rows}};
  if (xs.size() >= 2)
  {
    const double slope = loglog_slope(xs, ys);
    summary["max_sup_loglog_slope"] = slope;
    std::cerr << "fitted log-log slope of max FLIP sup vs N: " << slope << "\n";
  }
  if (identity)
  {
    summary["identity_max_diff"] = identity_gap;
    std::cerr << "identity map vs disk: max diff " << identity_gap << "\n";
    ok = ok && identity_gap <= 1e-9;
  }
  summary["passed"] = ok;
  emit(c, csv, summary);
  return ok ? exit_ok : exit_failed;
}
} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Leja sequences, Lagrange bases and Lebesgue constants on the disk, ellipses "
               "and the bidisk"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub)
  {
    sub->add_option("-o,--output", common.output, "Output file (default stdout)");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", common.seed, "Seed for every random choice");
    sub->add_option("--threads", common.threads, "Worker threads (default LEJA_THREADS or all cores)");
  };

  LejaArgs la;
  CLI::App* leja = app.add_subcommand("leja", "Build a Leja section and validate it. CSV columns: index,re,im");
  add_common(leja);
  leja->add_flag("--disk", la.disk, "Unit disk (explicit construction unless --greedy)");
  leja->add_option("--ellipse", la.ellipse, "Ellipse semi-axes a b (greedy on samples)")
      ->expected(2);
  leja->add_flag("--greedy", la.greedy, "Greedy construction on boundary samples");
  leja->add_flag("--random", la.random, "Disk only: draw each admissible next point at random");
  leja->add_option("-N", la.n, "Number of points")->required()->check(CLI::PositiveNumber);
  leja->add_option("--samples", la.samples, "Boundary samples (default max(4096, 64N))");
  leja->add_option("--tol", la.tol, "Relative tolerance (default 1e-6, greedy 10/samples)");

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "FLIP sup and Lebesgue constant sweep of the explicit disk sections. CSV columns: "
                "N,max_sup,lebesgue,uniform_margin,lebesgue_margin; with --special-n: "
                "p,N,lebesgue,expected,sum_sup,avg_sup,max_sup,min_sup");
  add_common(bounds);
  bounds->add_option("--max-n", ba.max_n, "Largest N")->check(CLI::PositiveNumber);
  bounds->add_flag("--special-n", ba.special, "Sweep N = 2^p - 1 instead");
  bounds->add_option("--p", ba.p, "Range of p, e.g. 2..8");
  bounds->add_flag("--avg", ba.avg, "Also require avg_sup > 1 and a decreasing trend");
  bounds->add_option("--grid", ba.grid, "Coarse circle grid (default bit_ceil(max(4096, 64N)))");
  bounds->add_option("--refine", ba.refine, "Golden-section iterations");

  BivariateArgs va;
  CLI::App* biv = app.add_subcommand(
      "bivariate", "Bivariate Lagrange experiments on Leja x Leja arrays. CSV columns: n,N,value");
  add_common(biv);
  biv->add_flag("--delta", va.delta, "Delta property and degree membership for N <= n-max");
  biv->add_flag("--oracle", va.oracle, "Closed forms against determinant ratios");
  biv->add_flag("--factorization", va.factorization, "Determinant extension factor");
  biv->add_flag("--verify-2d-leja", va.verify, "2D Leja property for N <= n-max");
  biv->add_flag("--lebesgue", va.lebesgue, "Lebesgue constants for degrees in --n");
  biv->add_flag("--decay", va.decay, "exp(z+w) interpolation error for degrees in --n");
  biv->add_option("--n-max", va.n_max, "Largest number of nodes N")->check(CLI::PositiveNumber);
  biv->add_option("--n", va.degrees, "Degree range, e.g. 2..12");
  biv->add_option("--grid", va.grid, "Torus grid points per axis")->check(CLI::PositiveNumber);

  TransportArgs ta;
  CLI::App* tr = app.add_subcommand(
      "transport", "Disk sections mapped onto an ellipse. CSV columns: N,max_sup,lebesgue; with "
                   "--alper: w_grid,t_grid,A");
  add_common(tr);
  tr->add_option("--ellipse", ta.ellipse, "Semi-axes a b with a >= b > 0")->expected(2);
  tr->add_option("--max-n", ta.max_n, "Largest N")->check(CLI::PositiveNumber);
  tr->add_flag("--alper", ta.alper, "Estimate the Alper constant with a grid-doubling check");
  tr->add_option("--w-grid", ta.w_grid, "Alper outer grid")->check(CLI::Range(1, 1 << 20));
  tr->add_option("--t-grid", ta.t_grid, "Alper quadrature grid")->check(CLI::Range(1, 1 << 22));
  tr->add_option("--grid", ta.grid, "Coarse boundary grid");
  tr->add_option("--refine", ta.refine, "Golden-section iterations");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e)
  {
    app.exit(e);
    return exit_usage;
  }

  if (common.threads > 0)
    set_thread_count(common.threads);
  try
  {
    if (leja->parsed())
      return cmd_leja(common, la);
    if (bounds->parsed())
      return cmd_bounds(common, ba);
    if (biv->parsed())
      return cmd_bivariate(common, va);
    return cmd_transport(common, ta);
  }
  catch (const CLI::ValidationError& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const std::invalid_argument& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failed;
  }
}
