#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhyp/group.hpp"
#include "qhyp/numerics.hpp"
#include "qhyp/reps.hpp"
#include "qhyp/specfun.hpp"

namespace qhyp {

/// Section of the homogeneous bundle: F(gk) = tau(k)^{-1} F(g).
struct Section {
  BundleWeight nu;
  std::function<RepVector(const GroupElement&)> eval;
  std::string tag;

  RepVector operator()(const GroupElement& g) const { return eval(g); }
};

Section operator-(const Section& a, const Section& b);

/// One generator e^{(i lambda - rho) H(g^{-1} k)} tau(kappa(g^{-1} k))^{-1} v.
struct GeneratorTerm {
  GroupElement g;
  GroupElement ginv;
  cplx lambda;
  RepVector v;
};

/// M-covariant function K -> V_nu. Finite combinations of generators keep
/// their terms so that the intertwiner can act on them.
class BoundarySection {
 public:
  static BoundarySection generator(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                   const GroupElement& g, const RepVector& v);
  static BoundarySection from_function(BundleWeight nu, std::function<RepVector(const KElement&)> f,
                                       std::string tag);

  RepVector operator()(const KElement& k) const;
  BundleWeight nu() const { return nu_; }
  const std::string& tag() const { return tag_; }
  const std::vector<GeneratorTerm>& terms() const { return terms_; }
  bool is_generator_combination() const { return !fn_; }

  /// Sum of two generator combinations.
  BoundarySection operator+(const BoundarySection& o) const;
  BoundarySection scaled(cplx a) const;

 private:
  BundleWeight nu_;
  std::string tag_;
  std::vector<GeneratorTerm> terms_;
  std::function<RepVector(const KElement&)> fn_;
};

/// U_lambda on generator combinations: each term's lambda becomes -lambda.
/// Throws InvalidArgument for sections given only as functions.
BoundarySection intertwine(const BoundarySection& f);

/// max over K-samples of ||f(km) - sigma(m)^{-1} f(k)|| for random k, m.
double covariance_residual(const GroupContext& ctx, const BoundarySection& f, std::size_t samples,
                           std::uint64_t seed);

/// max ||F(gk) - tau(k)^{-1} F(g)|| over random g, k.
double section_covariance_residual(const GroupContext& ctx, const Section& F, std::size_t samples,
                                   std::uint64_t seed, double radius = 1.5);

struct MCEstimate {
  double value = 0.0;
  double stderr = 0.0;
};

struct VectorEstimate {
  RepVector value;
  double stderr = 0.0;  // sqrt(E||X - mean||^2 / N)
};

/// int_K ||f(k)||^2 dk.
MCEstimate l2_norm2_K(const GroupContext& ctx, const BoundarySection& f, const MCConfig& mc);

/// phi_{nu,lambda}(A+(y)) tau(w(y))^{-1} v.
RepVector spherical_apply(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                          const GroupElement& y, const RepVector& v);
RepVector spherical_apply(const SphericalFunction& phi, const GroupElement& y, const RepVector& v);

/// x -> Phi_{nu,lambda}(g^{-1} x) v.
Section poisson_generator(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                          const GroupElement& g, const RepVector& v);

/// MC average over Haar(K) of e^{-(i lambda + rho) H(g^{-1} k)} tau(kappa(g^{-1} k)) f(k).
VectorEstimate poisson_quadrature(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                  const BoundarySection& f, const GroupElement& g, const MCConfig& mc);

/// tau(k2)^{-1} [c(l) e^{(il-rho)t} f(k1) + c(-l) e^{(-il-rho)t} Uf(k1)] for x = k1 a_t k2.
RepVector asymptotic_profile(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                             const BoundarySection& f, const BoundarySection& Uf, const GroupElement& x);

/// Same profile with caller-supplied Cartan components.
RepVector asymptotic_profile(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                             const BoundarySection& f, const BoundarySection& Uf, double t,
                             const KElement& k1, const KElement& k2);

/// phi_{nu,lambda}(t) - sum_{s=+-1} c_nu(s lambda) e^{(i s lambda - rho) t}.
cplx spherical_remainder(const GroupContext& ctx, BundleWeight nu, SpectralParam s, double t);

struct BallAverageReport {
  std::vector<double> radii;
  std::vector<double> values;   // (1/R) int_{B(R)} ||F||^2
  std::vector<double> stderrs;  // per radius
  double extrapolated_limit = 0.0;  // value at the largest radius
  double stderr = 0.0;              // stderr at the largest radius

  double sup_value() const;
  void write_csv(std::ostream& os) const;
};

std::vector<double> default_radii();

/// (1/R) int_0^R int_K ||F(k a_t)||^2 dk Delta(t) dt. Gauss panels in t, Haar
/// directions shared by all t-nodes (common random numbers).
BallAverageReport ball_average(const GroupContext& ctx, const Section& F, const std::vector<double>& radii,
                               const MCConfig& mc);

/// Ball average of Phi(g^{-1} x) v - S_lambda f^g_{lambda,v}(x).
BallAverageReport key_lemma_defect(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                   const GroupElement& g, const RepVector& v,
                                   const std::vector<double>& radii, const MCConfig& mc);

/// Deterministic g = e version of the defect: (1/R) int |remainder(t)|^2 Delta(t) dt ||v||^2.
BallAverageReport scalar_remainder_average(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                           double v_norm2, const std::vector<double>& radii,
                                           const MCConfig& mc);

}  // namespace qhyp
