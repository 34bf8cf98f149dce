#include "qhyp/group.hpp"

#include <cmath>
#include <string>

#include "qhyp/errors.hpp"

namespace qhyp {

GroupContext::GroupContext(int n_) : n(n_), rho(2.0 * n_ + 1.0) {
  if (n_ < 1) throw InvalidArgument("GroupContext: n must be >= 1");
}

namespace {

// J m* J without forming J: flips the sign of the off-diagonal blocks.
QMatrix j_adjoint_j(const QMatrix& m) {
  QMatrix r = m.adjoint();
  const std::size_t last = r.rows() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    r(i, last) = -r(i, last);
    r(last, i) = -r(last, i);
  }
  return r;
}

}  // namespace

GroupElement::GroupElement(const GroupContext& ctx, QMatrix m, double tol)
    : ctx_(ctx), m_(std::move(m)) {
  if (m_.rows() != ctx_.dim() || m_.cols() != ctx_.dim())
    throw DimensionMismatch("GroupElement: matrix must be (n+1)x(n+1)");
  const double res = form_residual();
  if (!(res <= tol))
    throw FormViolation("GroupElement: form residual " + std::to_string(res));
}

GroupElement GroupElement::unchecked(const GroupContext& ctx, QMatrix m) {
  return GroupElement(ctx, std::move(m), nullptr);
}

GroupElement GroupElement::identity(const GroupContext& ctx) {
  return unchecked(ctx, QMatrix::identity(ctx.dim()));
}

GroupElement GroupElement::inverse() const { return unchecked(ctx_, j_adjoint_j(m_)); }

double GroupElement::form_residual() const {
  const std::size_t dim = m_.rows();
  return max_entry_norm(j_adjoint_j(m_) * m_ - QMatrix::identity(dim));
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  return GroupElement::unchecked(g.ctx(), g.matrix() * h.matrix());
}

KElement KElement::identity(std::size_t n) { return {QMatrix::identity(n), Quaternion(1.0)}; }

GroupElement KElement::embed(const GroupContext& ctx) const {
  const std::size_t n = ctx.dim() - 1;
  QMatrix m(n + 1, n + 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = u(r, c);
  m(n, n) = q;
  return GroupElement::unchecked(ctx, std::move(m));
}

KElement KElement::inverse() const { return {u.adjoint(), q.conj()}; }

KElement operator*(const KElement& k1, const KElement& k2) { return {k1.u * k2.u, k1.q * k2.q}; }

KElement haar_k(const GroupContext& ctx, SampleStream& s) {
  KElement k;
  k.u = haar_spn(static_cast<std::size_t>(ctx.n), s);
  k.q = haar_sp1(s);
  return k;
}

KElement random_m(const GroupContext& ctx, SampleStream& s) {
  const std::size_t n = static_cast<std::size_t>(ctx.n);
  KElement m;
  m.q = haar_sp1(s);
  m.u = QMatrix(n, n);
  m.u(0, 0) = m.q;
  if (n > 1) {
    const QMatrix inner = haar_spn(n - 1, s);
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t c = 0; c + 1 < n; ++c) m.u(r + 1, c + 1) = inner(r, c);
  }
  return m;
}

GroupElement make_at(const GroupContext& ctx, double t) {
  const std::size_t n = ctx.dim() - 1;
  QMatrix m = QMatrix::identity(n + 1);
  const double ch = std::cosh(t), sh = std::sinh(t);
  m(0, 0) = Quaternion(ch);
  m(0, n) = Quaternion(sh);
  m(n, 0) = Quaternion(sh);
  m(n, n) = Quaternion(ch);
  return GroupElement::unchecked(ctx, std::move(m));
}

IwasawaData iwasawa(const GroupElement& g) {
  const std::size_t n = g.n();
  const Quaternion s = g.matrix()(n, 0) + g.matrix()(n, n);
  const double r = s.norm();
  return {std::log(r), (1.0 / r) * s};
}

CartanData cartan_radial(const GroupElement& g) {
  const Quaternion& d = g.d();
  const double nd = d.norm();
  CartanData out;
  out.t = std::acosh(std::max(nd, 1.0));
  out.w = (1.0 / nd) * d;
  return out;
}

CartanData cartan(const GroupElement& g) {
  CartanData out = cartan_radial(g);
  const double t = out.t;
  if (t < kCartanTMin)
    throw DegenerateRadius("cartan: radius " + std::to_string(t) + " below t_min");

  const std::size_t n = g.n();
  const QMatrix& m = g.matrix();
  const double sh = std::sinh(t), ch = std::cosh(t);

  // k1 = (u1, w): first column of u1 is b / sinh t, completed by Gram-Schmidt
  // against the standard basis vectors least aligned with it.
  QMatrix seed(n, n);
  std::size_t drop = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < n; ++r) {
    seed(r, 0) = (1.0 / sh) * m(r, n);
    const double a = seed(r, 0).norm();
    if (a > best) {
      best = a;
      drop = r;
    }
  }
  for (std::size_t c = 1, e = 0; c < n; ++c, ++e) {
    if (e == drop) ++e;
    seed(e, c) = Quaternion(1.0);
  }
  KElement k1{gram_schmidt_sp(seed), out.w};

  // u2 from the top-left block: a = u1 diag(cosh t, I) u2.
  QMatrix u2 = k1.u.adjoint() * g.a();
  for (std::size_t c = 0; c < n; ++c) u2(0, c) = (1.0 / ch) * u2(0, c);
  KElement k2{std::move(u2), Quaternion(1.0)};

  out.k1 = std::move(k1);
  out.k2 = std::move(k2);
  return out;
}

std::vector<Quaternion> ball_action(const GroupElement& g, const std::vector<Quaternion>& x) {
  const std::size_t n = g.n();
  if (x.size() != n) throw DimensionMismatch("ball_action: point has wrong dimension");
  const QMatrix& m = g.matrix();
  Quaternion den = m(n, n);
  for (std::size_t j = 0; j < n; ++j) den += m(n, j) * x[j];
  const Quaternion inv = den.inverse();
  std::vector<Quaternion> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    Quaternion num = m(r, n);
    for (std::size_t j = 0; j < n; ++j) num += m(r, j) * x[j];
    y[r] = num * inv;
  }
  return y;
}

double origin_radius(const GroupElement& g) {
  const std::size_t n = g.n();
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r) s += g.matrix()(r, n).norm2();
  return std::sqrt(s) / g.d().norm();
}

double log_density(const GroupContext& ctx, double t) {
  if (t <= 0.0) return -INFINITY;
  // log(2 sinh t) and log(2 cosh t) without overflow
  const double e = std::exp(-2.0 * t);
  const double ls = t + std::log1p(-e);
  const double lc = t + std::log1p(e);
  return (4.0 * ctx.n - 1.0) * ls + 3.0 * lc;
}

double density(const GroupContext& ctx, double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(log_density(ctx, t));
}

double gap(const GroupElement& g, const KElement& k, double t) {
  const GroupElement y = g.inverse() * k.embed(g.ctx()) * make_at(g.ctx(), t);
  const std::size_t n = y.n();
  const double nd = y.d().norm();
  const double ns = (y.matrix()(n, 0) + y.d()).norm();
  // A+ - H = log((|d| + sqrt(|d|^2 - 1)) / |c e1 + d|)
  return std::log((nd + std::sqrt(std::max(nd * nd - 1.0, 0.0))) / ns);
}

double gap_bound(const GroupElement& g, double t) {
  const double r = origin_radius(g);
  return (1.0 + r) / (1.0 - r) * std::exp(-2.0 * t);
}

GroupElement random_element(const GroupContext& ctx, double t, SampleStream& s) {
  const KElement k = haar_k(ctx, s);
  const KElement kp = haar_k(ctx, s);
  return k.embed(ctx) * make_at(ctx, t) * kp.embed(ctx);
}

}  // namespace qhyp
