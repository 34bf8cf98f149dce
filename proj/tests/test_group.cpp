#include "doctest.h"

#include <cmath>

#include "qhyp/errors.hpp"
#include "qhyp/group.hpp"
#include "qhyp/numerics.hpp"

using namespace qhyp;

namespace {

double max_diff(const std::vector<Quaternion>& a, const std::vector<Quaternion>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs_diff(a[i], b[i]));
  return m;
}

double point_norm(const std::vector<Quaternion>& x) {
  double s = 0.0;
  for (const auto& q : x) s += q.norm2();
  return std::sqrt(s);
}

std::vector<Quaternion> random_ball_point(std::size_t n, SampleStream& s, double radius) {
  std::vector<Quaternion> x(n);
  for (auto& q : x) q = Quaternion(s.normal(), s.normal(), s.normal(), s.normal());
  const double r = point_norm(x);
  for (auto& q : x) q = (radius * s.uniform() / r) * q;
  return x;
}

}  // namespace

TEST_CASE("context") {
  CHECK(GroupContext(1).rho == 3.0);
  CHECK(GroupContext(3).rho == 7.0);
  CHECK_THROWS_AS(GroupContext(0), InvalidArgument);
}

TEST_CASE("a_t flow") {
  for (int n : {1, 2, 3}) {
    const GroupContext ctx(n);
    CHECK(max_entry_norm(make_at(ctx, 0.0).matrix() - QMatrix::identity(ctx.dim())) == 0.0);
    const GroupElement ab = make_at(ctx, 0.4) * make_at(ctx, 1.1);
    CHECK(max_entry_norm(ab.matrix() - make_at(ctx, 1.5).matrix()) <= 1e-14);
    CHECK(cartan_radial(make_at(ctx, -2.0)).t == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(iwasawa(make_at(ctx, 1.7)).H == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(max_abs_diff(iwasawa(make_at(ctx, 1.7)).vkappa, Quaternion(1.0)) <= 1e-15);
  }
}

TEST_CASE("validation rejects non-group matrices") {
  const GroupContext ctx(2);
  QMatrix m = make_at(ctx, 1.0).matrix();
  CHECK_NOTHROW(GroupElement(ctx, m));
  m(0, 1) = Quaternion(1e-6);
  CHECK_THROWS_AS(GroupElement(ctx, m), FormViolation);
  CHECK_THROWS_AS(GroupElement(ctx, QMatrix::identity(2)), DimensionMismatch);
}

TEST_CASE("form preservation under long products") {
  for (int n : {1, 2}) {
    const GroupContext ctx(n);
    for (int trial = 0; trial < 50; ++trial) {
      SampleStream s(100 + n, static_cast<std::uint64_t>(trial));
      GroupElement g = GroupElement::identity(ctx);
      for (int step = 0; step < 20; ++step) {
        if (step % 2 == 0)
          g = g * haar_k(ctx, s).embed(ctx);
        else
          g = g * make_at(ctx, 2.0 * s.uniform() - 1.0);
      }
      CHECK(g.form_residual() <= 1e-9);
      CHECK(g.d().norm() >= 1.0 - 1e-12);
      CHECK(max_entry_norm((g * g.inverse()).matrix() - QMatrix::identity(ctx.dim())) <= 1e-8);
    }
  }
}

TEST_CASE("Iwasawa equivariance") {
  for (int n : {1, 2}) {
    const GroupContext ctx(n);
    for (int trial = 0; trial < 1000; ++trial) {
      SampleStream s(200 + n, static_cast<std::uint64_t>(trial));
      const GroupElement g = random_element(ctx, 3.0 * s.uniform(), s);
      const KElement k = haar_k(ctx, s);
      const double sh = 4.0 * s.uniform() - 2.0;
      const IwasawaData base = iwasawa(g);
      const IwasawaData moved = iwasawa(k.embed(ctx) * g * make_at(ctx, sh));
      CHECK(std::abs(moved.H - base.H - sh) <= 1e-10);
      CHECK(max_abs_diff(moved.vkappa, k.q * base.vkappa) <= 1e-10);
    }
    SampleStream s(300, 0);
    const KElement k = haar_k(ctx, s);
    const IwasawaData ik = iwasawa(k.embed(ctx));
    CHECK(std::abs(ik.H) <= 1e-15);
    CHECK(max_abs_diff(ik.vkappa, k.q) <= 1e-15);
  }
}

TEST_CASE("Cartan decomposition") {
  for (int n : {1, 2, 3}) {
    const GroupContext ctx(n);
    for (int trial = 0; trial < 1000; ++trial) {
      SampleStream s(400 + n, static_cast<std::uint64_t>(trial));
      const KElement k = haar_k(ctx, s), kp = haar_k(ctx, s);
      const double t = trial == 0 ? 2.0 : 0.01 + 4.0 * s.uniform();
      const GroupElement g = k.embed(ctx) * make_at(ctx, t) * kp.embed(ctx);
      const CartanData cd = cartan(g);
      CHECK(std::abs(cd.t - t) <= 1e-12 * std::max(1.0, t) / std::tanh(t));
      CHECK(max_abs_diff(cd.w, k.q * kp.q) <= 1e-12);
      REQUIRE(cd.k1.has_value());
      CHECK(max_abs_diff(cd.k2->q, Quaternion(1.0)) == 0.0);
      CHECK(max_abs_diff(cd.k1->q, cd.w) == 0.0);
      const GroupElement back = cd.k1->embed(ctx) * make_at(ctx, cd.t) * cd.k2->embed(ctx);
      CHECK(max_entry_norm(back.matrix() - g.matrix()) <= 1e-8);
      CHECK(max_entry_norm(cd.k2->u.adjoint() * cd.k2->u - QMatrix::identity(ctx.dim() - 1)) <= 1e-8);
      // bi-invariance of the radius
      const KElement a = haar_k(ctx, s), b = haar_k(ctx, s);
      CHECK(std::abs(cartan_radial(a.embed(ctx) * g * b.embed(ctx)).t - cd.t) <= 1e-10);
    }
    const CartanData e = cartan_radial(GroupElement::identity(ctx));
    CHECK(e.t == 0.0);
    CHECK(max_abs_diff(e.w, Quaternion(1.0)) == 0.0);
    CHECK_THROWS_AS(cartan(GroupElement::identity(ctx)), DegenerateRadius);
  }
}

TEST_CASE("ball action") {
  for (int n : {1, 2}) {
    const GroupContext ctx(n);
    SampleStream s(500 + n, 0);
    const std::vector<Quaternion> zero(n);
    const std::vector<Quaternion> x = random_ball_point(n, s, 0.9);
    CHECK(max_diff(ball_action(GroupElement::identity(ctx), x), x) == 0.0);

    const auto at0 = ball_action(make_at(ctx, 0.8), zero);
    CHECK(at0[0].w == doctest::Approx(std::tanh(0.8)).epsilon(1e-15));

    for (int trial = 0; trial < 200; ++trial) {
      const GroupElement g = random_element(ctx, 2.0 * s.uniform(), s);
      const GroupElement h = random_element(ctx, 2.0 * s.uniform(), s);
      const auto y = random_ball_point(n, s, 0.95);
      const auto gy = ball_action(g, y);
      CHECK(point_norm(gy) < 1.0);
      CHECK(max_diff(ball_action(g * h, y), ball_action(g, ball_action(h, y))) <= 1e-10);
      // g.0 = b d^{-1}
      const auto g0 = ball_action(g, zero);
      const Quaternion dinv = g.d().inverse();
      for (int r = 0; r < n; ++r) CHECK(max_abs_diff(g0[r], g.matrix()(r, n) * dinv) <= 1e-15);
      CHECK(origin_radius(g) == doctest::Approx(point_norm(g0)).epsilon(1e-12));
      CHECK(origin_radius(g) == doctest::Approx(std::tanh(cartan_radial(g).t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("radial density") {
  const GroupContext c1(1);
  CHECK(density(c1, 0.0) == 0.0);
  CHECK(density(c1, 1.0) ==
        doctest::Approx(std::pow(2 * std::sinh(1.0), 3) * std::pow(2 * std::cosh(1.0), 3)).epsilon(1e-13));
  for (int n : {1, 2, 3}) {
    const GroupContext ctx(n);
    for (double t = 0.05; t < 30.0; t *= 1.3)
      CHECK(density(ctx, t) <= 8.0 * std::exp(2.0 * ctx.rho * t));
  }
  // (1/R) int_0^R e^{-2 rho t} Delta(t) dt -> 1 with an O(1/R) deficit:
  // within 2% at R = 50 for n = 1, and the deficit shrinks like 1/R for larger n.
  auto normalized_mass = [](const GroupContext& ctx, double R) {
    const QuadratureRule q = composite_rule(0.0, R, 1.0, 32);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      s += q.weights[i] * std::exp(log_density(ctx, q.nodes[i]) - 2.0 * ctx.rho * q.nodes[i]);
    return s / R;
  };
  CHECK(std::abs(normalized_mass(c1, 50.0) - 1.0) <= 0.02);
  for (int n : {2, 3}) {
    const GroupContext ctx(n);
    const double d50 = 1.0 - normalized_mass(ctx, 50.0), d200 = 1.0 - normalized_mass(ctx, 200.0);
    CHECK(d50 > 0.0);
    CHECK(d200 * 200.0 == doctest::Approx(d50 * 50.0).epsilon(1e-10));
  }
}

TEST_CASE("gap inequality") {
  for (int n : {1, 2}) {
    const GroupContext ctx(n);
    SampleStream s0(600, 0);
    const KElement k0 = haar_k(ctx, s0);
    for (double t : {0.0, 0.5, 3.0})
      CHECK(std::abs(gap(GroupElement::identity(ctx), k0, t)) <= 1e-12);

    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      SampleStream s(700 + n, static_cast<std::uint64_t>(trial));
      const GroupElement g = random_element(ctx, std::atanh(0.9) * s.uniform(), s);
      const KElement k = haar_k(ctx, s);
      const double t = trial == 0 ? 8.0 : 10.0 * s.uniform();
      const double gp = gap(g, k, t);
      CHECK(gp >= -1e-12);
      CHECK(gp <= gap_bound(g, t) * (1.0 + 1e-9) + 1e-14);
      ++checked;
    }
    CHECK(checked == 1000);
  }
}

TEST_CASE("Iwasawa K-part is the limit of the normalized Cartan d-block") {
  for (int n : {1, 2}) {
    const GroupContext ctx(n);
    for (int trial = 0; trial < 100; ++trial) {
      SampleStream s(800 + n, static_cast<std::uint64_t>(trial));
      const GroupElement g = random_element(ctx, 2.0 * s.uniform(), s);
      const Quaternion wr = cartan_radial(g * make_at(ctx, 20.0)).w;
      CHECK(max_abs_diff(wr, iwasawa(g).vkappa) <= 1e-8);
    }
  }
}
