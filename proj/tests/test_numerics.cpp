#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qhyp/numerics.hpp"
#include "qhyp/reps.hpp"

using namespace qhyp;

TEST_CASE("gauss_panel exactness") {
  const QuadratureRule r = gauss_panel(0.0, 1.0, 2);
  double s = 0.0;
  for (std::size_t i = 0; i < 2; ++i) s += r.weights[i] * std::pow(r.nodes[i], 3);
  CHECK(s == doctest::Approx(0.25).epsilon(1e-15));

  const QuadratureRule w = gauss_panel(0.0, 2.0, 7);
  CHECK(pairwise_sum(w.weights) == doctest::Approx(2.0).epsilon(1e-15));

  const QuadratureRule q = gauss_panel(0.0, std::numbers::pi, 16);
  double si = 0.0;
  for (std::size_t i = 0; i < 16; ++i) si += q.weights[i] * std::sin(q.nodes[i]);
  CHECK(std::abs(si - 2.0) < 1e-12);

  for (std::size_t m : {1u, 2u, 5u, 32u, 64u}) {
    const QuadratureRule g = gauss_legendre(m);
    double deg = 0.0;
    for (std::size_t i = 0; i < m; ++i) deg += g.weights[i] * std::pow(g.nodes[i], 2 * m - 2);
    CHECK(deg == doctest::Approx(2.0 / (2.0 * m - 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("composite rules honour breaks") {
  const double breaks[] = {0.5, 2.0, 2.25};
  const QuadratureRule r = composite_rule_with_breaks(breaks, 1.0, 8);
  CHECK(r.nodes.size() == 8 * (1 + 2 + 1));
  CHECK(pairwise_sum(r.weights) == doctest::Approx(2.25).epsilon(1e-14));
  double e = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) e += r.weights[i] * std::exp(r.nodes[i]);
  CHECK(e == doctest::Approx(std::exp(2.25) - 1.0).epsilon(1e-14));
}

TEST_CASE("streams are keyed by index") {
  SampleStream a(42, 5), b(42, 5), c(42, 6), d(43, 5);
  const double x = a.normal();
  CHECK(x == b.normal());
  CHECK(x != c.normal());
  CHECK(x != d.normal());
}

TEST_CASE("Sp(1) Haar statistics") {
  constexpr int N = 1000000;
  double s = 0.0, s2 = 0.0, chi = 0.0, chi2 = 0.0;
  for (int i = 0; i < N; ++i) {
    SampleStream st(42, static_cast<std::uint64_t>(i));
    const Quaternion q = haar_sp1(st);
    s += q.w;
    s2 += q.w * q.w;
    const double c = character(BundleWeight{1}, q);
    chi += c;
    chi2 += c * c;
  }
  const double mean = s / N, sd = std::sqrt(s2 / N - mean * mean);
  CHECK(std::abs(mean) <= 3.0 * sd / std::sqrt(double(N)));
  // E[w^2] = 1/4 on the 3-sphere
  CHECK(s2 / N == doctest::Approx(0.25).epsilon(0.01));
  const double cm = chi / N, csd = std::sqrt(chi2 / N - cm * cm);
  CHECK(std::abs(cm) <= 3.0 * csd / std::sqrt(double(N)));
}

TEST_CASE("Sp(n) samples are symplectic unitary") {
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int i = 0; i < 500; ++i) {
      SampleStream st(9, static_cast<std::uint64_t>(i));
      const QMatrix u = haar_spn(n, st);
      CHECK(max_entry_norm(u.adjoint() * u - QMatrix::identity(n)) <= 1e-10);
    }
  }
}

TEST_CASE("pairwise summation is order stable") {
  std::vector<double> xs;
  for (int i = 0; i < 4097; ++i) xs.push_back(1.0 / (1.0 + i) * ((i % 3) ? 1.0 : -0.5));
  const double fwd = pairwise_sum(xs);
  std::vector<double> rev(xs.rbegin(), xs.rend());
  CHECK(std::abs(pairwise_sum(rev) - fwd) <= 1e-12 * std::abs(fwd));

  std::vector<double> table = {1, 2, 3, 4, 5, 6};
  const auto cols = pairwise_column_sums(table, 3, 2);
  CHECK(cols[0] == 9.0);
  CHECK(cols[1] == 12.0);
}
