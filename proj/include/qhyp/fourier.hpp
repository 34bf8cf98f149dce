#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "qhyp/jacobi.hpp"
#include "qhyp/poisson.hpp"

namespace qhyp {

/// Section vanishing outside the ball B(support_radius).
struct CompactSection {
  Section base;
  double support_radius = 0.0;

  RepVector operator()(const GroupElement& g) const;
};

/// F(g) = f(A+(g)) tau(w(g))^{-1} v, the vector form of a tau-radial function.
CompactSection tau_radial_section(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                  const RepVector& v);

/// x -> F(h^{-1} x); the support grows by A+(h).
CompactSection translated(const CompactSection& F, const GroupElement& h);

CompactSection operator+(const CompactSection& a, const CompactSection& b);
CompactSection scaled(const CompactSection& F, cplx a);

/// Child seed for the j-th outer sample of a nested Monte-Carlo integral.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t j);

/// int_G e^{(i l - rho) H(g^{-1} k)} tau(kappa(g^{-1} k))^{-1} F(g) dg.
/// Gauss panels in t, independent Haar samples (mc.ball_k_samples) at every t-node.
VectorEstimate helgason_fourier(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                double lambda, const KElement& k, const MCConfig& mc);

/// Same kernel at complex lambda (discrete-series slices).
VectorEstimate helgason_fourier(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                cplx lambda, const KElement& k, const MCConfig& mc);

struct FourierSlice {
  double lambda = 0.0;
  std::function<VectorEstimate(const KElement&)> eval;
};

FourierSlice fourier_slice(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                           double lambda, const MCConfig& mc);

/// int_G Phi(x^{-1} g) F(x) dx with Phi(y) = p(A+(y)) tau(w(y))^{-1}.
VectorEstimate convolve_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& p,
                               const CompactSection& F, const GroupElement& g, const MCConfig& mc);

/// |c_nu(l)|^{-2} P_l[F_nu F(l, .)](g) by nested Monte-Carlo: mc.outer_samples
/// Haar points for the Poisson integral, one Fourier slice at each.
VectorEstimate spectral_projection(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                   double lambda, const GroupElement& g, const MCConfig& mc);

/// Closed form for F = tau_radial_section(f, v): |c|^{-2} H_nu f(l) phi_{nu,l}(A+(g)) tau(w(g))^{-1} v.
RepVector spectral_projection_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                     const RepVector& v, double lambda, const GroupElement& g);

/// int_G ||F||^2 dg by polar quadrature and Haar samples per t-node.
MCEstimate section_norm2(const GroupContext& ctx, const CompactSection& F, const MCConfig& mc);

/// (int_K ||F_nu F(l,k)||^2 dk)^{1/2} / (|c_nu(l)| R^{1/2} ||F||). Each squared slice
/// norm is debiased by its own Monte-Carlo variance.
double restriction_ratio(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                         double lambda, const MCConfig& mc);

/// Closed form for tau-radial sections: |H_nu f(l)| / (|c_nu(l)| R^{1/2} ||f||_{L^2(Delta)}).
double restriction_ratio_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                double lambda);

// ---------------------------------------------------------------------------
// tau-radial reduction of the spectral theory

/// int_0^R |f|^2 Delta dt.
double radial_norm2(const GroupContext& ctx, const RadialProfile& f);

struct RadialPlancherel {
  double geometric = 0.0;   // int |f|^2 Delta
  double continuous = 0.0;  // int_0^lmax |H f|^2 |c_nu|^{-2} dl, without constant
  double discrete = 0.0;    // sum d_nu |H f(l_j)|^2
  double kappa = 0.0;       // (geometric - discrete) / continuous
};

RadialPlancherel radial_plancherel(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                   double lambda_max = 40.0);

/// (1/2pi) int H f phi_{nu,l}(t) |c_nu|^{-2} dl + sum d_nu H f(l_j) phi_{nu,l_j}(t).
std::vector<cplx> radial_inversion(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                   const std::vector<double>& ts, double lambda_max = 40.0,
                                   bool include_discrete = true);

/// (1/R) int_0^R |phi_{nu,l}(t)|^2 Delta(t) dt at each radius.
std::vector<double> spherical_ball_average(const GroupContext& ctx, BundleWeight nu, double lambda,
                                           const std::vector<double>& radii, const MCConfig& mc);

struct SpectralAggregate {
  std::vector<double> radii;
  std::vector<double> values;  // int (1/R) int_{B(R)} ||Q_l F||^2 dl / 2pi
  double norm2 = 0.0;          // ||F||^2 (continuous part)
  double sup() const;
};

/// Aggregate for F = tau_radial_section(f, v), continuous spectrum only.
SpectralAggregate spectral_aggregate(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                     const RepVector& v, const std::vector<double>& radii,
                                     const MCConfig& mc, double lambda_max = 40.0);

// ---------------------------------------------------------------------------
// Export

/// CSV `lambda,k_index,comp_index,re,im`.
void write_slices_csv(std::ostream& os, const std::vector<double>& lambdas,
                      const std::vector<std::vector<RepVector>>& values);

/// JSON sidecar: seed and the sampled K-points.
void write_slices_sidecar(std::ostream& os, const std::vector<KElement>& ks, std::uint64_t seed,
                          BundleWeight nu, int n);

}  // namespace qhyp
