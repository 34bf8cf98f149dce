#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "qhyp/group.hpp"
#include "qhyp/reps.hpp"

namespace qhyp {

using cplx = std::complex<double>;

/// Jacobi parameters (alpha, beta); rho_ab = alpha + beta + 1. Requires alpha > -1.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  JacobiParams(double a, double b);
  double rho_ab() const { return alpha + beta + 1.0; }
};

/// Spectral parameter lambda in C.
struct SpectralParam {
  cplx lambda;
  SpectralParam(cplx l) : lambda(l) {}  // NOLINT(google-explicit-constructor)
  SpectralParam(double l) : lambda(l, 0.0) {}  // NOLINT(google-explicit-constructor)
  SpectralParam operator-() const { return SpectralParam(-lambda); }
};

/// Principal-branch log Gamma. Throws PoleAtNonpositiveInteger.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
/// 1/Gamma(z); exactly zero at the poles.
cplx rgamma(cplx z);

/// Gauss 2F1 for real z < 1 (and its continuation for z <= -9 via 1/z).
/// Throws ParameterPole when c is a nonpositive integer.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

cplx c_ab(const JacobiParams& p, SpectralParam s);
cplx c_nu(const GroupContext& ctx, BundleWeight nu, SpectralParam s);

/// c_nu(lambda) if (nu-rho+2)/2 is a nonnegative integer, lambda*c_nu(lambda)
/// otherwise; evaluated in a form that is regular on the real axis.
cplx b_nu(const GroupContext& ctx, BundleWeight nu, SpectralParam s);

/// Sign in the growth law |b_nu(lambda)|^{-1} ~ (1+lambda^2)^{(2 rho - 4 - eps)/4}.
int epsilon_nu(const GroupContext& ctx, BundleWeight nu);

/// phi_lambda^{(alpha,beta)}(t) with c(+-lambda) cached. Route per t: the
/// tanh^2-series, the two-term expansion in the second solutions, or (near
/// the poles of c) an average over a small circle in lambda.
class JacobiFunction {
 public:
  JacobiFunction(const JacobiParams& p, SpectralParam s);

  cplx operator()(double t) const;

  /// Second solution Psi_{+-lambda}(t); requires 1 - i(+-lambda) off the poles.
  cplx psi(double t, bool negate = false) const;

  /// Two-term connection expansion c(l) Psi_l + c(-l) Psi_{-l}.
  cplx connection(double t) const;

  /// Direct tanh^2-series.
  cplx series(double t) const;

  const JacobiParams& params() const { return p_; }
  cplx lambda() const { return lambda_; }
  bool connection_available() const { return connection_ok_; }
  cplx c_plus() const { return c_plus_; }
  cplx c_minus() const { return c_minus_; }

 private:
  JacobiParams p_;
  cplx lambda_;
  bool connection_ok_ = false;
  bool terminating_ = false;
  cplx c_plus_{0.0}, c_minus_{0.0};
  std::shared_ptr<const std::vector<JacobiFunction>> circle_;
};

cplx jacobi_phi(const JacobiParams& p, SpectralParam s, double t);

/// Second solution, t >= 1. Throws SpectralPole when 1 - i lambda is a nonpositive integer.
cplx jacobi_psi(const JacobiParams& p, SpectralParam s, double t);

/// phi_{nu,lambda}(t) = (cosh t)^nu phi_lambda^{(rho-2, nu+1)}(t).
class SphericalFunction {
 public:
  SphericalFunction(const GroupContext& ctx, BundleWeight nu, SpectralParam s);

  cplx operator()(double t) const;
  cplx c() const { return c_; }
  cplx c_minus() const { return c_minus_; }
  const JacobiFunction& jacobi() const { return jf_; }
  BundleWeight nu() const { return nu_; }

 private:
  BundleWeight nu_;
  JacobiFunction jf_;
  cplx c_{0.0}, c_minus_{0.0};
};

cplx spherical_phi(const GroupContext& ctx, BundleWeight nu, SpectralParam s, double t);

/// log cosh t without overflow.
double log_cosh(double t);

}  // namespace qhyp
