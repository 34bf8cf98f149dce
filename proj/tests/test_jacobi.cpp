#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qhyp/errors.hpp"
#include "qhyp/jacobi.hpp"

using namespace qhyp;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

RadialProfile bump() { return gaussian_bump(0.3, 2.0); }

std::vector<double> t_grid() {
  std::vector<double> ts;
  for (int i = 0; i <= 30; ++i) ts.push_back(0.1 * i);
  return ts;
}

double round_trip_error(const JacobiParams& p, const DiscreteSpectrum& ds) {
  const auto f = bump();
  const JacobiForward fwd(p, f);
  const auto ts = t_grid();
  const auto back = jacobi_inverse(p, [&](cplx l) { return fwd(l); }, ds, ts, 40.0);
  double err = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) err = std::max(err, std::abs(back[i] - f(ts[i])));
  return err;
}

}  // namespace

TEST_CASE("discrete set is empty when |beta| <= alpha + 1") {
  CHECK(discrete_spectrum(JacobiParams(1, 1)).empty());
  CHECK(discrete_spectrum(JacobiParams(1, 2)).empty());
  CHECK(discrete_spectrum(JacobiParams(1, -2)).empty());
  CHECK(discrete_spectrum(JacobiParams(0.5, 1.5)).empty());
}

TEST_CASE("discrete set for alpha=1, beta=5") {
  const auto ds = discrete_spectrum(JacobiParams(1, 5));
  REQUIRE(ds.size() == 2);
  CHECK(ds.entries[0].lambda == cplx(0.0, 3.0));
  CHECK(ds.entries[1].lambda == cplx(0.0, 1.0));
  for (const auto& e : ds.entries) CHECK(e.d > 0.0);
}

TEST_CASE("discrete set is strictly decreasing in Im lambda") {
  for (auto [a, b] : {std::pair{0.0, 9.0}, {1.0, -8.0}, {2.5, 11.3}}) {
    const auto ds = discrete_spectrum(JacobiParams(a, b));
    REQUIRE(ds.size() >= 3);
    for (std::size_t k = 0; k < ds.size(); ++k) {
      CHECK(ds.entries[k].lambda.real() == 0.0);
      CHECK(ds.entries[k].lambda.imag() > 0.0);
      CHECK(ds.entries[k].d > 0.0);
      if (k > 0) CHECK(ds.entries[k].lambda.imag() < ds.entries[k - 1].lambda.imag());
    }
  }
}

TEST_CASE("closed-form weight matches the residue of (c c)^{-1} for integer parameters") {
  // mpmath contour integral of -i (c(mu) c(-mu))^{-1}, radius 1e-4
  const JacobiParams p(1, 5);
  CHECK(closed_form_weight(p, 0) == doctest::Approx(0.0029296875).epsilon(1e-12));
  CHECK(closed_form_weight(p, 1) == doctest::Approx(0.00146484375).epsilon(1e-12));
  auto c = [&](cplx l) { return c_ab(p, l); };
  const cplx r0 = residue_oracle(c, cplx(0.0, 3.0));
  const cplx r1 = residue_oracle(c, cplx(0.0, 1.0));
  CHECK(std::abs(r0 - closed_form_weight(p, 0)) / closed_form_weight(p, 0) < 1e-6);
  CHECK(std::abs(r1 - closed_form_weight(p, 1)) / closed_form_weight(p, 1) < 1e-6);
  CHECK(std::abs(r0.imag()) < 1e-12);
}

TEST_CASE("inversion weights for non-integer parameters equal the residue") {
  // mpmath contour residues at (alpha, beta) = (0.5, 4.2)
  const JacobiParams p(0.5, 4.2);
  const auto ds = discrete_spectrum(p);
  REQUIRE(ds.size() == 2);
  CHECK(ds.entries[0].d == doctest::Approx(0.00419352606125).epsilon(1e-10));
  CHECK(ds.entries[1].d == doctest::Approx(0.00137600073885).epsilon(1e-10));
  auto c = [&](cplx l) { return c_ab(p, l); };
  for (const auto& e : ds.entries) {
    CHECK(std::abs(residue_oracle(c, e.lambda) - e.d) / e.d < 1e-6);
  }
}

TEST_CASE("inversion weights are half the closed form") {
  for (auto [a, b] : {std::pair{1.0, 5.0}, {0.0, 3.0}, {0.5, 4.2}, {2.0, 9.5}}) {
    const JacobiParams p(a, b);
    const auto ds = discrete_spectrum(p);
    for (std::size_t k = 0; k < ds.size(); ++k) {
      CHECK(ds.entries[k].d == doctest::Approx(0.5 * closed_form_weight(p, static_cast<int>(k))).epsilon(1e-14));
    }
  }
}

TEST_CASE("negative beta uses |beta| in the discrete set") {
  // mpmath contour residue at (1, -5), lambda = 3i: 3072 = 2^20 * 3/1024
  const JacobiParams p(1, -5);
  const auto ds = discrete_spectrum(p);
  REQUIRE(ds.size() == 2);
  CHECK(ds.entries[0].lambda == cplx(0.0, 3.0));
  CHECK(closed_form_weight(p, 0) == doctest::Approx(3072.0).epsilon(1e-12));
  CHECK(closed_form_weight(p, 1) == doctest::Approx(1536.0).epsilon(1e-12));
}

TEST_CASE("D_nu is empty for nu <= rho - 2") {
  for (int n = 1; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int nu = 0; nu <= static_cast<int>(ctx.rho) - 2; ++nu) {
      CHECK(discrete_Dnu(ctx, BundleWeight{nu}).empty());
    }
    CHECK_FALSE(discrete_Dnu(ctx, BundleWeight{static_cast<int>(ctx.rho) - 1}).empty());
  }
}

TEST_CASE("D_nu at n=1, nu=4") {
  const GroupContext ctx(1);
  const auto dn = discrete_Dnu(ctx, BundleWeight{4});
  const auto dk = discrete_spectrum(JacobiParams(1, 5));
  REQUIRE(dn.size() == 2);
  CHECK(dn.entries[0].lambda == cplx(0.0, 3.0));
  CHECK(dn.entries[1].lambda == cplx(0.0, 1.0));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(dn.entries[k].lambda == dk.entries[k].lambda);
    CHECK(dn.entries[k].d == doctest::Approx(256.0 * dk.entries[k].d).epsilon(1e-12));
  }
}

TEST_CASE("D_nu weights follow from the residue of (c_nu c_nu)^{-1}") {
  // c_nu = 2^{-nu} c_ab, so the c_nu residue is 4^nu times the c_ab residue
  const GroupContext ctx(1);
  for (int nu = 2; nu <= 6; ++nu) {
    const BundleWeight w{nu};
    auto c = [&](cplx l) { return c_nu(ctx, w, l); };
    for (const auto& e : discrete_Dnu(ctx, w).entries) {
      const cplx r = residue_oracle(c, e.lambda);
      CHECK(std::abs(r - 2.0 * e.d) / (2.0 * e.d) < 1e-6);
    }
  }
}

TEST_CASE("closed-form D_nu weights") {
  const GroupContext ctx(1);
  const JacobiParams p(1, 5);
  CHECK(discrete_Dnu_closed_form(ctx, BundleWeight{4}, 0) ==
        doctest::Approx(65536.0 * closed_form_weight(p, 0)).epsilon(1e-12));
  CHECK_THROWS_AS(discrete_Dnu_closed_form(ctx, BundleWeight{4}, 2), InvalidArgument);
}

TEST_CASE("measure identity") {
  for (int n = 1; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int nu = 0; nu <= 4; ++nu) {
      const JacobiParams p(ctx.rho - 2.0, nu + 1.0);
      for (double t : {0.05, 0.3, 1.0, 2.5, 6.0}) {
        const double lhs = std::pow(2.0 * std::sinh(t), 4 * n - 1) * std::pow(2.0 * std::cosh(t), 3);
        const double rhs = std::pow(2.0 * std::cosh(t), -2.0 * nu) * jacobi_density(p, t);
        CHECK(std::abs(lhs - rhs) / lhs < 1e-12);
      }
    }
  }
}

TEST_CASE("forward transform matches adaptive mpmath quadrature") {
  struct Case {
    double a, b;
    cplx lambda;
    double value;
  };
  const Case cases[] = {
      {1, 2, 0.5, 5.9342262492828282},   {1, 2, 3.0, 3.5302799459522751},
      {1, 2, 10.0, 0.010684716608442033}, {1, 2, cplx(0, 3), 10.232216584764586},
      {1, 2, cplx(0, 1), 6.3891688166066469}, {1, 5, 0.5, 159.24263955079135},
      {1, 5, 3.0, 63.660019040756847},    {1, 5, 10.0, -0.089643919703061465},
      {1, 5, cplx(0, 3), 385.44540578999472}, {1, 5, cplx(0, 1), 180.20361636883933},
  };
  const auto f = bump();
  for (const auto& c : cases) {
    const cplx v = jacobi_forward(JacobiParams(c.a, c.b), f, c.lambda);
    CHECK(std::abs(v - c.value) < 1e-9 * std::max(1.0, std::abs(c.value)));
    CHECK(std::abs(v.imag()) < 1e-9 * std::max(1.0, std::abs(c.value)));
  }
}

TEST_CASE("forward transform agrees with a fine trapezoid rule") {
  const JacobiParams p(1, 2);
  const auto f = bump();
  const int n = 40000;
  const double h = 2.0 / n;
  for (double l : {0.7, 4.0}) {
    const JacobiFunction phi(p, l);
    cplx s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = i * h;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      s += w * f(t) * phi(t) * jacobi_density(p, t);
    }
    s *= h;
    CHECK(rel(jacobi_forward(p, f, l), s) < 1e-8);
  }
}

TEST_CASE("forward transform is even in lambda and vanishes for f = 0") {
  const JacobiParams p(1, 5);
  const JacobiForward fwd(p, bump());
  for (double l : {0.3, 2.0, 7.5}) CHECK(rel(fwd(-l), fwd(l)) < 1e-12);
  CHECK(jacobi_forward(p, RadialProfile::zero(2.0), 1.3) == cplx(0.0));
}

TEST_CASE("non-finite integrand raises QuadratureNonConvergence") {
  const auto bad = RadialProfile::analytic([](double t) { return t > 1.0 ? cplx(NAN) : cplx(1.0); }, 2.0);
  CHECK_THROWS_AS(jacobi_forward(JacobiParams(1, 2), bad, 1.0), QuadratureNonConvergence);
}

TEST_CASE("zero spectrum inverts to zero") {
  const auto v = jacobi_inverse(JacobiParams(1, 2), [](cplx) { return cplx(0.0); }, DiscreteSpectrum{}, 0.7);
  CHECK(v == cplx(0.0));
}

TEST_CASE("round trip without discrete part") {
  CHECK(round_trip_error(JacobiParams(1, 2), DiscreteSpectrum{}) <= 1e-4);
}

TEST_CASE("round trip with discrete part and its ablation") {
  const JacobiParams p(1, 5);
  const double with = round_trip_error(p, discrete_spectrum(p));
  const double without = round_trip_error(p, DiscreteSpectrum{});
  CHECK(with <= 1e-3);
  CHECK(without > 0.1);
}

TEST_CASE("Plancherel defect") {
  CHECK(plancherel_defect(JacobiParams(1, 2), bump(), 40.0) <= 1e-4);
  CHECK(plancherel_defect(JacobiParams(1, 5), bump(), 40.0) <= 1e-3);
  CHECK(plancherel_defect(JacobiParams(1, 5), RadialProfile::zero(2.0), 40.0) == 0.0);
}

TEST_CASE("H_nu reduction") {
  const GroupContext ctx(1);
  const auto f = bump();
  for (double l : {0.5, 2.0}) {
    CHECK(h_nu(ctx, BundleWeight{0}, f, l) == jacobi_forward(JacobiParams(1, 1), f, l));
    const auto g = f.weighted([](double t) { return std::pow(4.0 * std::cosh(t), -3.0); });
    CHECK(rel(h_nu(ctx, BundleWeight{3}, f, l), jacobi_forward(JacobiParams(1, 4), g, l)) < 1e-13);
  }
  CHECK(h_nu(ctx, BundleWeight{2}, RadialProfile::zero(2.0), 1.0) == cplx(0.0));
}

TEST_CASE("the two integrands of the tau-spherical transform agree") {
  for (int n = 1; n <= 2; ++n) {
    const GroupContext ctx(n);
    for (int nu = 0; nu <= 3; ++nu) {
      const JacobiParams p(ctx.rho - 2.0, nu + 1.0);
      for (double t : {0.2, 1.0, 3.0}) {
        const double delta = std::pow(2.0 * std::sinh(t), 4 * n - 1) * std::pow(2.0 * std::cosh(t), 3);
        const double a = std::pow(std::cosh(t), nu) * delta;
        const double b = std::pow(4.0 * std::cosh(t), -nu) * jacobi_density(p, t);
        CHECK(std::abs(a - b) / a < 1e-12);
      }
    }
  }
}

TEST_CASE("sampled profiles: interpolation, evenness and support") {
  std::vector<double> t;
  std::vector<cplx> v;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.01 * i);
    v.emplace_back(std::exp(-t.back() * t.back() / 0.18), 0.5 * std::sin(t.back()));
  }
  const auto prof = RadialProfile::sampled(t, v);
  CHECK(prof.support_radius() == 2.0);
  CHECK(prof(t[37]) == v[37]);
  CHECK(prof(-0.555) == prof(0.555));
  CHECK(prof(2.01) == cplx(0.0));
  // shape-preserving slopes are only first-order accurate near extrema
  const auto exact = bump();
  for (double s = 0.003; s < 2.0; s += 0.0137) {
    CHECK(std::abs(prof(s).real() - exact(s).real()) < 5e-5);
    CHECK(std::abs(prof(s).imag() - 0.5 * std::sin(s)) < 5e-5);
  }
  CHECK_THROWS_AS(RadialProfile::sampled({0.0, 0.0}, {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("interpolation preserves monotonicity of the data") {
  const std::vector<double> t{0.0, 0.1, 0.2, 1.0, 1.05, 2.0};
  const std::vector<cplx> v{0.0, 0.0, 1.0, 1.1, 3.0, 3.0};
  const auto prof = RadialProfile::sampled(t, v);
  double prev = -1.0;
  for (double s = 0.0; s <= 2.0; s += 0.001) {
    const double x = prof(s).real();
    CHECK(x >= prev - 1e-15);
    prev = x;
  }
}

TEST_CASE("profile and spectrum CSV round trip") {
  const auto f = bump();
  std::stringstream ss;
  f.write_csv(ss, 101);
  CHECK(ss.str().rfind("t,value_re,value_im\n", 0) == 0);
  const auto g = RadialProfile::read_csv(ss);
  CHECK(g.support_radius() == 2.0);
  CHECK(g(0.4).real() == doctest::Approx(f(0.4).real()).epsilon(1e-12));

  SpectrumTable s{{0.5, 1.0}, {cplx(1.5, -2.0), cplx(0.25, 0.0)}};
  std::stringstream out;
  s.write_csv(out);
  CHECK(out.str() == "lambda,value_re,value_im\n0.5,1.5,-2\n1,0.25,0\n");
  const auto back = SpectrumTable::read_csv(out);
  CHECK(back.value == s.value);

  std::stringstream bad("x,y,z\n1,2,3\n");
  CHECK_THROWS_AS(RadialProfile::read_csv(bad), InvalidArgument);
}
