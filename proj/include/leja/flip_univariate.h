#pragma once

#include "leja/core_math.h"
#include "leja/leja_disk.h"

#include <functional>
#include <vector>

namespace leja
{

/// Estimated maximum modulus along a closed curve, parametrised by angle.
struct SupNormEstimate
{
  double value = 0.0;
  double argmax_angle = 0.0; // radians in (-pi, pi]
  std::size_t coarse_grid_size = 0;
  bool refined = false;
};

struct LebesgueReport
{
  std::size_t N = 0;
  double constant = 0.0;
  double argmax_angle = 0.0;
  std::vector<double> per_node_sup;
};

/// Lagrange basis on a fixed set of distinct nodes. Node indices are 0-based.
class LagrangeBasis1D
{
public:
  explicit LagrangeBasis1D(std::vector<Complex> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Complex>& nodes() const { return nodes_; }

  /// log prod_{j != k} |eta_k - eta_j|
  double log_node_product(std::size_t k) const { return log_denominator_[k]; }

  Complex value(std::size_t k, Complex z) const;
  double abs_value(std::size_t k, Complex z) const;

  /// |l_k(z)| for every k; out must have size() entries.
  void abs_all(Complex z, std::span<double> out) const;

  double lebesgue_function(Complex z) const;

private:
  std::vector<Complex> nodes_;
  std::vector<double> log_denominator_;
  std::vector<double> weight_; // exp(-log_denominator_ - shift_)
  double shift_ = 0.0;
};

/// A closed curve: x in (-1, 1] maps to the point at parameter angle pi*x.
using Curve = std::function<Complex(double)>;

Complex circle_point(double x);

/// bit_ceil(max(4096, 64 n)).
std::size_t default_grid_size(std::size_t n);

struct FlipSweep
{
  std::vector<SupNormEstimate> per_node;
  SupNormEstimate lebesgue;
};

/// One grid pass computing every per-node sup and the Lebesgue constant on
/// the curve, followed by golden-section refinement of each maximum.
/// grid = 0 selects default_grid_size.
FlipSweep sweep_on_curve(const LagrangeBasis1D& basis, const Curve& curve,
                         std::size_t grid, int refine_iters);

/// k is 1-based. Rejects duplicated nodes.
Complex flip_direct(const std::vector<Complex>& points, std::size_t k, Complex z);

/// (1/m)|z^m - 1| / |z - z_k| for the m-th roots of unity, z_k = exp(2 i pi (k-1)/m).
double roots_of_unity_flip_abs(std::size_t m, std::size_t k, Complex z);

/// Product form of |l_k| for the first 2^{p_1} nodes of a unit-disk Leja
/// section whose length is not a power of two.
class StructuredFlip
{
public:
  explicit StructuredFlip(const LejaSection& section);

  std::size_t block_size() const { return block_; }
  Complex omega0() const { return omega0_; }

  /// k is 1-based, k <= block_size().
  double abs(std::size_t k, Complex z) const;

private:
  Complex origin_;
  Complex omega0_;
  std::size_t block_ = 0;
  int p1_ = 0;
  std::vector<int> tail_exponents_;
  std::vector<Complex> omega_powers_; // omega0^{2^{p_q}}, q >= 2
  std::vector<Complex> block_nodes_;  // normalised z_k
  std::vector<double> denominators_;  // prod_q |z_k^{2^{p_q}} + omega0^{2^{p_q}}|
};

double flip_structured_abs(const LejaSection& section, std::size_t k, Complex z);

/// k is 1-based; coarse_grid = 0 selects the default.
SupNormEstimate sup_norm_on_circle(const std::vector<Complex>& points, std::size_t k,
                                   std::size_t coarse_grid = 0, int refine_iters = 40);

LebesgueReport lebesgue_constant(const std::vector<Complex>& points,
                                 std::size_t coarse_grid = 0, int refine_iters = 40);

LebesgueReport make_report(const FlipSweep& sweep);

struct SpecialNStatistics
{
  int p = 0;
  std::size_t N = 0;
  double sum_sup = 0.0;
  double avg_sup = 0.0;
  double max_sup = 0.0;
  double min_over_k = 0.0;
  double lebesgue = 0.0;

  bool sum_above = false;   // sum_sup > 2^p - 1
  bool max_below_2 = false; // max_sup <= 2 + 1e-6
  bool max_above = false;   // max_sup >= 4 cos(pi/8)/pi - 1e-6

  bool holds() const { return sum_above && max_below_2 && max_above; }
};

/// FLIP sup norms of the canonical (2^p - 1)-section.
SpecialNStatistics special_n_statistics(int p, std::size_t coarse_grid = 0,
                                        int refine_iters = 40);

struct SpotValue
{
  double computed = 0.0;
  double closed_form = 0.0;
};

/// For the canonical section N = 2^{p_1+1} - 1, evaluates |l_k| at
/// z_k exp(i pi / 2^{p_1+1}) for the node with omega_0 / z_k = exp(i pi / 2^{p_1}),
/// next to cos(pi/2^{p_1+2}) / (2^{p_1} sin(pi/2^{p_1+2})).
SpotValue special_n_spot_value(int p1);

} // namespace leja
