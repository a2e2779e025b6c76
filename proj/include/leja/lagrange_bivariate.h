#pragma once

#include "leja/core_math.h"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace leja
{

struct LexIndex
{
  std::size_t j = 1;
  int k = 0;
  int l = 0;
};

/// Graded order (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ... with j 1-based.
LexIndex lex_to_pair(std::size_t j);
std::size_t pair_to_lex(int k, int l);

struct Shape
{
  int n = 0;
  int m = 0;
};

/// (n+1)(n+2)/2
std::size_t full_block_size(int n);

/// N_{n-1} < N <= N_n and m = N - N_{n-1} - 1.
Shape shape_of(std::size_t N);

struct BivariatePoint
{
  Complex z;
  Complex w;
};

/// Node H_j = (eta_{k(j)}, theta_{l(j)}) for j = 1..N.
struct IntertwiningArray
{
  std::vector<Complex> eta;
  std::vector<Complex> theta;
  std::size_t N = 0;
  int n = 0;
  int m = 0;
  std::vector<BivariatePoint> nodes;
  std::vector<LexIndex> index;
};

IntertwiningArray build_array(std::vector<Complex> eta, std::vector<Complex> theta,
                              std::size_t N);

/// sign * Z(p, z_upper) * W(q, w_upper) where
/// Z(p, a) = prod_{j=0..a, j != p} (z - eta_j) / (eta_p - eta_j), and W alike.
struct FlipTerm
{
  int sign = 1;
  int z_upper = -1;
  int w_upper = -1;
};

struct FlipFormula
{
  int case_id = 0; // 1..7, in the order the cases are tested
  std::vector<FlipTerm> terms;
};

FlipFormula flip_formula(int n, int m, int p, int q);

/// Closed-form Lagrange basis of an intertwining array.
class BivariateBasis
{
public:
  explicit BivariateBasis(IntertwiningArray array);

  const IntertwiningArray& array() const { return array_; }
  std::size_t size() const { return array_.N; }
  const FlipFormula& formula(std::size_t node) const { return formulas_[node]; }

  /// node is 0-based.
  Complex value(std::size_t node, Complex z, Complex w) const;

  /// Every basis function at (z, w); out has size() entries.
  void values(Complex z, Complex w, std::span<Complex> out) const;

private:
  IntertwiningArray array_;
  std::vector<FlipFormula> formulas_;
};

/// l_{(eta_p, theta_q)}(z, w). fired_case receives the case id when non-null.
/// Rejects (p, q) outside the array.
Complex bivariate_flip(const IntertwiningArray& array, int p, int q, Complex z, Complex w,
                       int* fired_case = nullptr);

/// Number of nodes handled by each case; index 0 is unused.
std::array<std::size_t, 8> case_histogram(const IntertwiningArray& array);

/// sum_p f(H_p) l_{H_p}(z, w); values are indexed like array.nodes.
Complex interpolate(const BivariateBasis& basis, std::span<const Complex> values, Complex z,
                    Complex w);

using BivariateFunction = std::function<Complex(Complex, Complex)>;

Complex interpolate(const IntertwiningArray& array, const BivariateFunction& f, Complex z,
                    Complex w);

/// x -> exp(i pi (-1 + 2(i+1)/grid)) on each axis of the torus.
double bivariate_lebesgue(const IntertwiningArray& array, std::size_t grid);

/// Torus-grid sup of every |l_{H_p}|.
std::vector<double> bivariate_flip_sups(const IntertwiningArray& array, std::size_t grid);

/// Largest coefficient of a FLIP outside P_{n,m} (total degree > n, or
/// degree n with w-exponent > m), from a 2D DFT on (2n+2)-th roots of unity.
/// Scaled by max(1, largest coefficient).
double degree_violation(const BivariateBasis& basis, std::size_t node);

/// det[e_i(H_j)], rows in lex monomial order, columns the points.
LogProduct vdm_log_determinant(std::span<const BivariatePoint> points);
Complex vdm_determinant(std::span<const BivariatePoint> points);

inline constexpr std::size_t default_oracle_cap = 21;

/// VDM with H_node replaced by (z, w), divided by VDM(H_1..H_N); node is 1-based.
Complex flip_via_vdm_ratio(const IntertwiningArray& array, std::size_t node, Complex z,
                           Complex w, std::size_t cap = default_oracle_cap);

/// Predicted VDM(H_1..H_N, (z, w)) / VDM(H_1..H_N).
Complex vdm_extension_factor(const IntertwiningArray& array, Complex z, Complex w);

/// prod_{j=1}^n VDM(eta_0..eta_j) VDM(theta_0..theta_j) with
/// VDM(x_0..x_j) = prod_{a<b} (x_b - x_a).
Complex schiffer_siciak(std::span<const Complex> eta, std::span<const Complex> theta, int n);

struct Leja2DReport
{
  double max_shortfall = 0.0;
  std::size_t worst_N = 0; // 0 when nothing was checked
  bool passed(double tol) const { return max_shortfall <= tol; }
};

/// For N = 1..N_max-1 compares |extension factor at H_{N+1}| with its max over
/// the product of two circle grids, using the factored form.
Leja2DReport verify_2d_leja(std::span<const Complex> eta, std::span<const Complex> theta,
                            std::size_t N_max, std::size_t grid);

/// Same check for an arbitrary node order: the extension ratio is
/// e_{N+1} minus its interpolant on the first N nodes, found by a linear solve.
Leja2DReport verify_leja_order(std::span<const BivariatePoint> nodes, std::size_t N_max,
                               std::size_t grid);

struct DecayRow
{
  int n = 0;
  std::size_t N = 0;
  double sup_error = 0.0;
};

/// Interpolates f on Omega_{N_n} for n = n_min..n_max and records the
/// torus-grid sup error.
std::vector<DecayRow> jackson_decay_experiment(const BivariateFunction& f,
                                               std::span<const Complex> eta,
                                               std::span<const Complex> theta, int n_min,
                                               int n_max, std::size_t grid);

} // namespace leja
