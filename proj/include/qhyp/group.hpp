#pragma once

#include <optional>
#include <vector>

#include "qhyp/numerics.hpp"
#include "qhyp/quat.hpp"

namespace qhyp {

/// Rank data of Sp(n,1): quaternionic dimension n and rho = 2n+1.
struct GroupContext {
  int n = 1;
  double rho = 3.0;

  explicit GroupContext(int n_);
  std::size_t dim() const { return static_cast<std::size_t>(n) + 1; }
};

/// Element of Sp(n,1) as an (n+1)x(n+1) quaternionic matrix with blocks
///   [ a  b ]
///   [ c  d ]
/// a: n x n, b: n x 1, c: 1 x n, d: scalar.
class GroupElement {
 public:
  /// Validates m* J m = J to `tol` in max-entry norm; throws FormViolation.
  GroupElement(const GroupContext& ctx, QMatrix m, double tol = 1e-9);

  /// Skips validation (products of validated elements, hot loops).
  static GroupElement unchecked(const GroupContext& ctx, QMatrix m);

  static GroupElement identity(const GroupContext& ctx);

  const GroupContext& ctx() const { return ctx_; }
  const QMatrix& matrix() const { return m_; }
  std::size_t n() const { return static_cast<std::size_t>(ctx_.n); }

  QMatrix a() const { return m_.block(0, 0, n(), n()); }
  QMatrix b() const { return m_.block(0, n(), n(), 1); }
  QMatrix c() const { return m_.block(n(), 0, 1, n()); }
  const Quaternion& d() const { return m_(n(), n()); }

  /// g^{-1} = J m* J.
  GroupElement inverse() const;

  /// ||m* J m - J||_max.
  double form_residual() const;

 private:
  GroupElement(const GroupContext& ctx, QMatrix m, std::nullptr_t) : ctx_(ctx), m_(std::move(m)) {}
  GroupContext ctx_;
  QMatrix m_;
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);

/// k = (u, q) in K = Sp(n) x Sp(1).
struct KElement {
  QMatrix u;
  Quaternion q{1.0};

  static KElement identity(std::size_t n);
  GroupElement embed(const GroupContext& ctx) const;
  KElement inverse() const;
};

KElement operator*(const KElement& k1, const KElement& k2);

/// Haar-distributed element of K.
KElement haar_k(const GroupContext& ctx, SampleStream& s);

/// Element m = diag(q, u', q) of M (u' in Sp(n-1)), written as a KElement.
KElement random_m(const GroupContext& ctx, SampleStream& s);

struct IwasawaData {
  double H = 0.0;
  Quaternion vkappa{1.0};
};

struct CartanData {
  double t = 0.0;
  Quaternion w{1.0};
  std::optional<KElement> k1;
  std::optional<KElement> k2;
};

/// Radius below which cartan() does not build k1, k2.
inline constexpr double kCartanTMin = 1e-6;

GroupElement make_at(const GroupContext& ctx, double t);

IwasawaData iwasawa(const GroupElement& g);

/// Cartan data in the gauge k2.q = 1. Throws DegenerateRadius when
/// t < kCartanTMin; use cartan_radial() when only (t, w) are needed.
CartanData cartan(const GroupElement& g);

/// t and w only; never throws.
CartanData cartan_radial(const GroupElement& g);

/// Fractional-linear action x -> (a x + b)(c x + d)^{-1} on the unit ball of H^n.
std::vector<Quaternion> ball_action(const GroupElement& g, const std::vector<Quaternion>& x);

/// |g.0| = |b d^{-1}|.
double origin_radius(const GroupElement& g);

/// Radial density (2 sinh t)^{4n-1} (2 cosh t)^3.
double density(const GroupContext& ctx, double t);
double log_density(const GroupContext& ctx, double t);

/// A+(y) - H(y) for y = g^{-1} k a_t.
double gap(const GroupElement& g, const KElement& k, double t);

/// Right-hand side of the gap inequality: (1+|g.0|)/(1-|g.0|) e^{-2t}.
double gap_bound(const GroupElement& g, double t);

/// k a_t k' for Haar k, k' and the given radius.
GroupElement random_element(const GroupContext& ctx, double t, SampleStream& s);

}  // namespace qhyp
