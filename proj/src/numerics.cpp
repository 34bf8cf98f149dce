#include "qhyp/numerics.hpp"

#include <cmath>
#include <numbers>

#include "qhyp/errors.hpp"

namespace qhyp {

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {
std::uint64_t mix_key(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  const std::uint64_t s = a();
  SplitMix64 b(s ^ (index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
  return b();
}
}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : engine_(mix_key(seed, index)) {}

double SampleStream::uniform() {
  // 53 random mantissa bits in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SampleStream::normal() {
  // Box-Muller; one variate per call keeps the stream position explicit.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Quaternion haar_sp1(SampleStream& s) {
  for (;;) {
    Quaternion q(s.normal(), s.normal(), s.normal(), s.normal());
    const double n = q.norm();
    if (n > 1e-12) return (1.0 / n) * q;
  }
}

QMatrix haar_spn(std::size_t n, SampleStream& s) {
  QMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      g(r, c) = Quaternion(s.normal(), s.normal(), s.normal(), s.normal());
  return gram_schmidt_sp(g);
}

QuadratureRule gauss_legendre(std::size_t m) {
  if (m < 1) throw InvalidArgument("gauss_legendre: m must be positive");
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (m == 1) { p1 = x; p0 = 1.0; }
      dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

QuadratureRule gauss_panel(double a, double b, std::size_t m) {
  if (!(a < b)) throw InvalidArgument("gauss_panel: need a < b");
  QuadratureRule rule = gauss_legendre(m);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < m; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadratureRule composite_rule(double a, double b, double width, std::size_t m) {
  const double edges[] = {a, b};
  if (a == 0.0) return composite_rule_with_breaks(std::span<const double>(edges + 1, 1), width, m);
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width - 1e-12));
  const QuadratureRule ref = gauss_legendre(m);
  QuadratureRule out;
  const double h = (b - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
  for (std::size_t p = 0; p < std::max<std::size_t>(panels, 1); ++p) {
    const double lo = a + h * static_cast<double>(p);
    for (std::size_t i = 0; i < m; ++i) {
      out.nodes.push_back(lo + 0.5 * h * (ref.nodes[i] + 1.0));
      out.weights.push_back(0.5 * h * ref.weights[i]);
    }
  }
  return out;
}

QuadratureRule composite_rule_with_breaks(std::span<const double> breaks, double width,
                                          std::size_t m) {
  const QuadratureRule ref = gauss_legendre(m);
  QuadratureRule out;
  double lo = 0.0;
  for (double hi : breaks) {
    if (hi <= lo) continue;
    const auto panels =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-12)));
    const double h = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = lo + h * static_cast<double>(p);
      for (std::size_t i = 0; i < m; ++i) {
        out.nodes.push_back(a + 0.5 * h * (ref.nodes[i] + 1.0));
        out.weights.push_back(0.5 * h * ref.weights[i]);
      }
    }
    lo = hi;
  }
  return out;
}

namespace {
template <class T>
T pairwise_impl(std::span<const T> xs) {
  if (xs.size() <= 8) {
    T s{};
    for (const T& x : xs) s += x;
    return s;
  }
  const std::size_t h = xs.size() / 2;
  return pairwise_impl(xs.first(h)) + pairwise_impl(xs.subspan(h));
}
}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise_impl(xs); }

std::vector<double> pairwise_column_sums(std::span<const double> table, std::size_t rows,
                                         std::size_t cols) {
  std::vector<double> out(cols);
  std::vector<double> column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = table[r * cols + c];
    out[c] = pairwise_sum(column);
  }
  return out;
}

}  // namespace qhyp
