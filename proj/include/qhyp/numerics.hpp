#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qhyp/quat.hpp"

namespace qhyp {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

/// Monte-Carlo and quadrature budget shared by the K- and ball-integrators.
struct MCConfig {
  std::uint64_t seed = 42;
  std::size_t k_samples = 200000;     // single K-integrals
  std::size_t panel_points = 64;      // Gauss points per t-panel
  double t_panel_width = 1.0;
  std::size_t ball_k_samples = 2048;  // K-directions per t-node of a ball integral
  std::size_t outer_samples = 64;     // outer K-points of nested integrals
  Exec exec = Exec::parallel;
};

// ---------------------------------------------------------------------------
// Random streams

/// SplitMix64 bit generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// Counter-based stream: the draws of sample `index` depend only on
/// (seed, index), never on which thread evaluates it.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);
  double normal();
  double uniform();

 private:
  SplitMix64 engine_;
};

/// Uniform point of the unit 3-sphere (Haar measure on Sp(1)).
Quaternion haar_sp1(SampleStream& s);

/// Haar-distributed element of Sp(n): quaternionic Ginibre + gram_schmidt_sp.
QMatrix haar_spn(std::size_t n, SampleStream& s);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t m);

/// m-point Gauss-Legendre rule mapped to [a, b]. Exact through degree 2m-1.
QuadratureRule gauss_panel(double a, double b, std::size_t m);

/// Composite rule: [a, b] split into ceil((b-a)/width) equal panels of m points.
QuadratureRule composite_rule(double a, double b, double width, std::size_t m);

/// Composite rule on [0, b] with panel edges at every radius in `breaks`.
QuadratureRule composite_rule_with_breaks(std::span<const double> breaks, double width,
                                          std::size_t m);

// ---------------------------------------------------------------------------
// Summation

/// Pairwise (cascade) summation with a fixed tree, so results depend only on
/// the input order.
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

/// Column-wise pairwise sum over a row-major rows x cols table.
std::vector<double> pairwise_column_sums(std::span<const double> table, std::size_t rows,
                                         std::size_t cols);

}  // namespace qhyp
