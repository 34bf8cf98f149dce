#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "qhyp/group.hpp"
#include "qhyp/numerics.hpp"
#include "qhyp/reps.hpp"
#include "qhyp/specfun.hpp"

namespace qhyp {

/// Even profile t -> f(|t|), zero beyond support_radius. Either analytic or
/// sampled with monotone piecewise-cubic (Fritsch-Carlson) interpolation
/// applied to real and imaginary parts separately.
class RadialProfile {
 public:
  static RadialProfile analytic(std::function<cplx(double)> f, double support_radius);
  static RadialProfile sampled(std::vector<double> t, std::vector<cplx> values);
  static RadialProfile zero(double support_radius = 1.0);

  cplx operator()(double t) const;
  double support_radius() const { return support_; }
  bool is_sampled() const { return !grid_.empty(); }

  /// max |f| (exact for sampled profiles, 4096-point scan otherwise).
  double sup_norm() const;

  /// t -> w(t) f(t) with the same support.
  RadialProfile weighted(std::function<double(double)> w) const;

  /// CSV with header `t,value_re,value_im`.
  void write_csv(std::ostream& os, std::size_t samples = 401) const;
  static RadialProfile read_csv(std::istream& is);

 private:
  std::function<cplx(double)> fn_;
  double support_ = 0.0;
  std::vector<double> grid_;
  std::vector<cplx> values_, slopes_;
};

/// Truncated Gaussian exp(-t^2 / (2 sigma^2)) on [0, R].
RadialProfile gaussian_bump(double sigma, double support_radius);

/// (lambda, value) table; CSV header `lambda,value_re,value_im`.
struct SpectrumTable {
  std::vector<double> lambda;
  std::vector<cplx> value;

  void write_csv(std::ostream& os) const;
  static SpectrumTable read_csv(std::istream& is);
};

struct DiscreteSpectrum {
  struct Entry {
    cplx lambda;
    double d;
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// Closed form (|beta|-alpha-2k-1) 2^{-2(alpha+beta)} G(alpha+k+1) G(|beta|-k)
///   / (G(alpha+1)^2 G(|beta|-alpha-k) k!).
/// For integer alpha, beta it equals -i Res (c(mu) c(-mu))^{-1} at lambda_k.
double closed_form_weight(const JacobiParams& p, int k);

/// lambda_k = i(|beta| - alpha - 1 - 2k) > 0 with the weights that make the
/// inversion and Plancherel formulas hold: closed_form_weight / 2.
DiscreteSpectrum discrete_spectrum(const JacobiParams& p);

/// lambda_j = i(nu - rho + 2 - 2j) > 0 with weights 4^nu times those of
/// discrete_spectrum(rho - 2, nu + 1), matching H_nu and c_nu.
DiscreteSpectrum discrete_Dnu(const GroupContext& ctx, BundleWeight nu);

/// Closed-form d_nu(lambda_j) with the 2^{-2(rho-nu-1)} prefactor, kept for comparison.
double discrete_Dnu_closed_form(const GroupContext& ctx, BundleWeight nu, int j);

/// -i Res_{mu=lambda0} (c(mu) c(-mu))^{-1} by the trapezoid rule on a circle.
cplx residue_oracle(const std::function<cplx(cplx)>& c, cplx lambda0, double radius = 1e-3,
                    std::size_t points = 64);

/// Delta_{alpha,beta}(t) = (2 sinh t)^{2 alpha + 1} (2 cosh t)^{2 beta + 1}.
double jacobi_density(const JacobiParams& p, double t);

struct ForwardOptions {
  double rel_tol = 1e-10;
  std::size_t points = 32;
  double panel_width = 0.5;
  int max_levels = 6;
};

/// Forward Jacobi transform of a fixed profile, evaluated at any lambda.
/// Node sets are refined by panel halving until two levels agree to
/// rel_tol (1 + ||f||_inf) times the L1 size of the integrand.
class JacobiForward {
 public:
  JacobiForward(const JacobiParams& p, RadialProfile f, ForwardOptions opt = {});
  cplx operator()(SpectralParam s) const;
  const JacobiParams& params() const { return p_; }

 private:
  struct Level {
    std::vector<double> nodes;
    std::vector<cplx> weighted_f;  // w_i f(t_i) Delta(t_i)
  };
  Level build_level(int k) const;
  cplx apply(const Level& lv, const JacobiFunction& phi) const;

  JacobiParams p_;
  RadialProfile f_;
  ForwardOptions opt_;
  double fnorm_ = 0.0;
  std::vector<Level> levels_;  // levels 0 and 1; deeper ones are built per call
};

cplx jacobi_forward(const JacobiParams& p, const RadialProfile& f, SpectralParam s);

/// Quadrature on (0, lambda_max]: panels [0,1/4],[1/4,1/2],[1/2,1],[1,2], then width 2.
QuadratureRule spectral_rule(double lambda_max, std::size_t points = 32);

using SpectrumFn = std::function<cplx(cplx)>;

/// (1/2pi) int_0^lmax S(l) phi_l(t) |c(l)|^{-2} dl + sum_k d_k S(l_k) phi_{l_k}(t).
cplx jacobi_inverse(const JacobiParams& p, const SpectrumFn& spectrum, const DiscreteSpectrum& ds,
                    double t, double lambda_max = 40.0);
std::vector<cplx> jacobi_inverse(const JacobiParams& p, const SpectrumFn& spectrum,
                                 const DiscreteSpectrum& ds, const std::vector<double>& ts,
                                 double lambda_max = 40.0);

struct PlancherelSides {
  double geometric = 0.0;   // int |f|^2 Delta dt
  double continuous = 0.0;  // int_0^lmax |Jf|^2 |c|^{-2} dl (no 1/2pi)
  double discrete = 0.0;    // sum d_k |Jf(l_k)|^2
};
PlancherelSides plancherel_sides(const JacobiParams& p, const RadialProfile& f, double lambda_max);

/// |LHS - RHS| / LHS with the 1/2pi constant; 0 when f vanishes.
double plancherel_defect(const JacobiParams& p, const RadialProfile& f, double lambda_max = 40.0);

/// J^{rho-2, nu+1}[(4 cosh t)^{-nu} f](lambda).
cplx h_nu(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f, SpectralParam s);

/// Cached form of h_nu for many lambda.
class HNuTransform {
 public:
  HNuTransform(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f, ForwardOptions opt = {});
  cplx operator()(SpectralParam s) const { return fwd_(s); }

 private:
  JacobiForward fwd_;
};

/// (4 cosh t)^{-nu}.
double hnu_weight(BundleWeight nu, double t);

}  // namespace qhyp
