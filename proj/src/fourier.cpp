#include "qhyp/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "qhyp/errors.hpp"

namespace qhyp {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Polar rule on [0, R] with node weights w_i Delta(t_i) and the matching a_t.
struct PolarRule {
  std::vector<double> t, wdelta;
  std::vector<GroupElement> at;
};

PolarRule polar_rule(const GroupContext& ctx, double R, const MCConfig& mc) {
  PolarRule pr;
  const auto rule = composite_rule(0.0, R, mc.t_panel_width, mc.panel_points);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    pr.t.push_back(rule.nodes[i]);
    pr.wdelta.push_back(rule.weights[i] * density(ctx, rule.nodes[i]));
    pr.at.push_back(make_at(ctx, rule.nodes[i]));
  }
  return pr;
}

// sum_i w_i Delta_i E_k[X(k, t_i)] with N independent Haar samples per node.
VectorEstimate polar_integral(const GroupContext& ctx, BundleWeight nu, double R, const MCConfig& mc,
                              const std::function<RepVector(const GroupElement& kernel_g)>& integrand) {
  const PolarRule pr = polar_rule(ctx, R, mc);
  const std::size_t T = pr.t.size(), N = std::max<std::size_t>(mc.ball_k_samples, 2), d = nu.dim();
  const std::size_t cols = 2 * d;
  std::vector<double> node_sum(T * cols), node_var(T);
  const auto nT = static_cast<std::ptrdiff_t>(T);
#pragma omp parallel for schedule(dynamic) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < nT; ++i) {
    std::vector<double> block(N * cols);
    for (std::size_t j = 0; j < N; ++j) {
      SampleStream st(mc.seed, static_cast<std::uint64_t>(i) * N + j);
      const GroupElement g = haar_k(ctx, st).embed(ctx) * pr.at[i];
      const RepVector x = integrand(g);
      for (std::size_t c = 0; c < d; ++c) {
        block[j * cols + 2 * c] = pr.wdelta[i] * x.coords[c].real();
        block[j * cols + 2 * c + 1] = pr.wdelta[i] * x.coords[c].imag();
      }
    }
    auto mean = pairwise_column_sums(block, N, cols);
    for (auto& m : mean) m /= static_cast<double>(N);
    std::vector<double> dev(N);
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) s += std::pow(block[j * cols + c] - mean[c], 2);
      dev[j] = s;
    }
    node_var[i] = pairwise_sum(dev) / (static_cast<double>(N) * static_cast<double>(N - 1));
    std::copy(mean.begin(), mean.end(), node_sum.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  const auto total = pairwise_column_sums(node_sum, T, cols);
  VectorEstimate out;
  out.value = RepVector(nu);
  for (std::size_t c = 0; c < d; ++c) out.value.coords[c] = {total[2 * c], total[2 * c + 1]};
  out.stderr = std::sqrt(pairwise_sum(node_var));
  return out;
}

MCConfig serial_inner(const MCConfig& mc, std::uint64_t j) {
  MCConfig inner = mc;
  inner.seed = derive_seed(mc.seed, j);
  inner.exec = Exec::serial;
  return inner;
}

}  // namespace

RepVector CompactSection::operator()(const GroupElement& g) const {
  if (cartan_radial(g).t > support_radius) return RepVector(base.nu);
  return base(g);
}

CompactSection tau_radial_section(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                  const RepVector& v) {
  if (v.size() != nu.dim()) throw DimensionMismatch("vector has wrong dimension");
  (void)ctx;
  Section s{nu,
            [f, v, nu](const GroupElement& g) {
              const CartanData cd = cartan_radial(g);
              return f(cd.t) * tau_inverse_apply(nu, cd.w, v);
            },
            "tau_radial"};
  return CompactSection{std::move(s), f.support_radius()};
}

CompactSection translated(const CompactSection& F, const GroupElement& h) {
  const GroupElement hinv = h.inverse();
  Section s{F.base.nu, [F, hinv](const GroupElement& x) { return F(hinv * x); }, F.base.tag + " translated"};
  return CompactSection{std::move(s), F.support_radius + cartan_radial(h).t};
}

CompactSection operator+(const CompactSection& a, const CompactSection& b) {
  if (a.base.nu.nu != b.base.nu.nu) throw DimensionMismatch("sections of different bundles");
  Section s{a.base.nu, [a, b](const GroupElement& g) { return a(g) + b(g); }, "sum"};
  return CompactSection{std::move(s), std::max(a.support_radius, b.support_radius)};
}

CompactSection scaled(const CompactSection& F, cplx a) {
  Section s{F.base.nu, [F, a](const GroupElement& g) { return a * F(g); }, F.base.tag};
  return CompactSection{std::move(s), F.support_radius};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t j) {
  SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (j + 1)));
  sm();
  return sm();
}

// ---------------------------------------------------------------------------
// Transforms

VectorEstimate helgason_fourier(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                cplx lambda, const KElement& k, const MCConfig& mc) {
  const GroupElement ke = k.embed(ctx);
  const cplx expo = I * lambda - ctx.rho;
  return polar_integral(ctx, nu, F.support_radius, mc, [&](const GroupElement& g) {
    const IwasawaData iw = iwasawa(g.inverse() * ke);
    return std::exp(expo * iw.H) * tau_inverse_apply(nu, iw.vkappa, F(g));
  });
}

VectorEstimate helgason_fourier(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                double lambda, const KElement& k, const MCConfig& mc) {
  return helgason_fourier(ctx, nu, F, cplx(lambda), k, mc);
}

FourierSlice fourier_slice(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                           double lambda, const MCConfig& mc) {
  return FourierSlice{lambda, [=](const KElement& k) { return helgason_fourier(ctx, nu, F, lambda, k, mc); }};
}

VectorEstimate convolve_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& p,
                               const CompactSection& F, const GroupElement& g, const MCConfig& mc) {
  return polar_integral(ctx, nu, F.support_radius, mc, [&](const GroupElement& x) {
    const CartanData cd = cartan_radial(x.inverse() * g);
    return p(cd.t) * tau_inverse_apply(nu, cd.w, F(x));
  });
}

VectorEstimate spectral_projection(const GroupContext& ctx, BundleWeight nu, const CompactSection& F,
                                   double lambda, const GroupElement& g, const MCConfig& mc) {
  if (lambda == 0.0) throw SpectralPole("spectral projection at lambda = 0");
  const double scale = 1.0 / std::norm(c_nu(ctx, nu, lambda));
  const GroupElement ginv = g.inverse();
  const std::size_t N = std::max<std::size_t>(mc.outer_samples, 2), d = nu.dim(), cols = 2 * d;
  const cplx expo = -(I * lambda + ctx.rho);
  std::vector<double> table(N * cols);
  const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(dynamic) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    SampleStream st(derive_seed(mc.seed, ~0ULL), static_cast<std::uint64_t>(j));
    const KElement k = haar_k(ctx, st);
    const RepVector slice = helgason_fourier(ctx, nu, F, lambda, k, serial_inner(mc, j)).value;
    const IwasawaData iw = iwasawa(ginv * k.embed(ctx));
    const RepVector x = (scale * std::exp(expo * iw.H)) * tau_matrix(nu, iw.vkappa).apply(slice);
    for (std::size_t c = 0; c < d; ++c) {
      table[j * cols + 2 * c] = x.coords[c].real();
      table[j * cols + 2 * c + 1] = x.coords[c].imag();
    }
  }
  auto mean = pairwise_column_sums(table, N, cols);
  for (auto& m : mean) m /= static_cast<double>(N);
  std::vector<double> dev(N);
  for (std::size_t j = 0; j < N; ++j) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += std::pow(table[j * cols + c] - mean[c], 2);
    dev[j] = s;
  }
  VectorEstimate out;
  out.value = RepVector(nu);
  for (std::size_t c = 0; c < d; ++c) out.value.coords[c] = {mean[2 * c], mean[2 * c + 1]};
  out.stderr = std::sqrt(pairwise_sum(dev) / (static_cast<double>(N) * static_cast<double>(N - 1)));
  return out;
}

RepVector spectral_projection_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                     const RepVector& v, double lambda, const GroupElement& g) {
  if (lambda == 0.0) throw SpectralPole("spectral projection at lambda = 0");
  const cplx h = h_nu(ctx, nu, f, lambda);
  return (h / std::norm(c_nu(ctx, nu, lambda))) * spherical_apply(ctx, nu, lambda, g, v);
}

MCEstimate section_norm2(const GroupContext& ctx, const CompactSection& F, const MCConfig& mc) {
  const BundleWeight one{0};
  const auto est = polar_integral(ctx, one, F.support_radius, mc, [&](const GroupElement& g) {
    return RepVector(std::vector<cplx>{F(g).norm2()});
  });
  return {est.value.coords[0].real(), est.stderr};
}

double restriction_ratio(const GroupContext& ctx, BundleWeight nu, const CompactSection& F, double lambda,
                         const MCConfig& mc) {
  if (lambda == 0.0) throw SpectralPole("restriction ratio at lambda = 0");
  const double norm2 = section_norm2(ctx, F, mc).value;
  if (norm2 == 0.0) return 0.0;
  const std::size_t N = std::max<std::size_t>(mc.outer_samples, 1);
  std::vector<double> vals(N);
  const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(dynamic) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    SampleStream st(derive_seed(mc.seed, ~1ULL), static_cast<std::uint64_t>(j));
    const KElement k = haar_k(ctx, st);
    const auto est = helgason_fourier(ctx, nu, F, lambda, k, serial_inner(mc, j));
    vals[j] = est.value.norm2() - est.stderr * est.stderr;
  }
  const double slice2 = std::max(pairwise_sum(vals) / static_cast<double>(N), 0.0);
  return std::sqrt(slice2) / (std::abs(c_nu(ctx, nu, lambda)) * std::sqrt(F.support_radius * norm2));
}

double restriction_ratio_radial(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                double lambda) {
  const double norm2 = radial_norm2(ctx, f);
  if (norm2 == 0.0) return 0.0;
  return std::abs(h_nu(ctx, nu, f, lambda)) /
         (std::abs(c_nu(ctx, nu, lambda)) * std::sqrt(f.support_radius() * norm2));
}

// ---------------------------------------------------------------------------
// tau-radial reduction

double radial_norm2(const GroupContext& ctx, const RadialProfile& f) {
  const auto rule = composite_rule(0.0, f.support_radius(), 0.25, 32);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double t = rule.nodes[i];
    terms[i] = rule.weights[i] * std::norm(f(t)) * density(ctx, t);
  }
  return pairwise_sum(terms);
}

RadialPlancherel radial_plancherel(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                   double lambda_max) {
  RadialPlancherel out;
  out.geometric = radial_norm2(ctx, f);
  const HNuTransform H(ctx, nu, f);
  const auto rule = spectral_rule(lambda_max);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double l = rule.nodes[i];
    terms[i] = rule.weights[i] * std::norm(H(l)) / std::norm(c_nu(ctx, nu, l));
  }
  out.continuous = pairwise_sum(terms);
  for (const auto& e : discrete_Dnu(ctx, nu).entries) out.discrete += e.d * std::norm(H(e.lambda));
  out.kappa = out.continuous > 0.0 ? (out.geometric - out.discrete) / out.continuous : 0.0;
  return out;
}

std::vector<cplx> radial_inversion(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                   const std::vector<double>& ts, double lambda_max, bool include_discrete) {
  const HNuTransform H(ctx, nu, f);
  const auto rule = spectral_rule(lambda_max);
  const std::size_t m = rule.nodes.size();
  std::vector<SphericalFunction> phis;
  std::vector<cplx> weight(m);
  phis.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double l = rule.nodes[i];
    phis.emplace_back(ctx, nu, l);
    weight[i] = H(l) * rule.weights[i] / (kTwoPi * std::norm(c_nu(ctx, nu, l)));
  }
  std::vector<SphericalFunction> dphis;
  std::vector<cplx> dweight;
  if (include_discrete) {
    for (const auto& e : discrete_Dnu(ctx, nu).entries) {
      dphis.emplace_back(ctx, nu, e.lambda);
      dweight.push_back(e.d * H(e.lambda));
    }
  }
  std::vector<cplx> out(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::vector<cplx> terms(m);
    for (std::size_t i = 0; i < m; ++i) terms[i] = weight[i] * phis[i](ts[j]);
    cplx v = pairwise_sum(terms);
    for (std::size_t k = 0; k < dphis.size(); ++k) v += dweight[k] * dphis[k](ts[j]);
    out[j] = v;
  }
  return out;
}

std::vector<double> spherical_ball_average(const GroupContext& ctx, BundleWeight nu, double lambda,
                                           const std::vector<double>& radii, const MCConfig& mc) {
  const auto rule = composite_rule_with_breaks(radii, mc.t_panel_width, mc.panel_points);
  const SphericalFunction phi(ctx, nu, lambda);
  std::vector<double> vals(rule.nodes.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double t = rule.nodes[i];
    vals[i] = rule.weights[i] * std::norm(phi(t)) * density(ctx, t);
  }
  std::vector<double> out;
  for (double R : radii) {
    const auto end = std::upper_bound(rule.nodes.begin(), rule.nodes.end(), R) - rule.nodes.begin();
    out.push_back(pairwise_sum(std::span<const double>(vals.data(), static_cast<std::size_t>(end))) / R);
  }
  return out;
}

double SpectralAggregate::sup() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

SpectralAggregate spectral_aggregate(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                                     const RepVector& v, const std::vector<double>& radii,
                                     const MCConfig& mc, double lambda_max) {
  const HNuTransform H(ctx, nu, f);
  const auto rule = spectral_rule(lambda_max);
  const std::size_t m = rule.nodes.size(), nr = radii.size();
  std::vector<double> table(m * nr);
  const auto n = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double l = rule.nodes[i];
    const double c2 = std::norm(c_nu(ctx, nu, l));
    const double q2 = std::norm(H(l)) / (c2 * c2) * v.norm2();
    const auto avg = spherical_ball_average(ctx, nu, l, radii, mc);
    for (std::size_t r = 0; r < nr; ++r) table[i * nr + r] = rule.weights[i] * q2 * avg[r] / kTwoPi;
  }
  SpectralAggregate out;
  out.radii = radii;
  out.values = pairwise_column_sums(table, m, nr);
  double disc = 0.0;
  for (const auto& e : discrete_Dnu(ctx, nu).entries) disc += e.d * std::norm(H(e.lambda));
  out.norm2 = (radial_norm2(ctx, f) - disc) * v.norm2();
  return out;
}

// ---------------------------------------------------------------------------
// Export

void write_slices_csv(std::ostream& os, const std::vector<double>& lambdas,
                      const std::vector<std::vector<RepVector>>& values) {
  if (lambdas.size() != values.size()) throw DimensionMismatch("one row of slices per lambda");
  os << "lambda,k_index,comp_index,re,im\n" << std::setprecision(17);
  for (std::size_t a = 0; a < lambdas.size(); ++a) {
    for (std::size_t k = 0; k < values[a].size(); ++k) {
      for (std::size_t c = 0; c < values[a][k].size(); ++c) {
        const cplx z = values[a][k].coords[c];
        os << lambdas[a] << ',' << k << ',' << c << ',' << z.real() << ',' << z.imag() << '\n';
      }
    }
  }
}

void write_slices_sidecar(std::ostream& os, const std::vector<KElement>& ks, std::uint64_t seed,
                          BundleWeight nu, int n) {
  nlohmann::json j;
  j["seed"] = seed;
  j["nu"] = nu.nu;
  j["n"] = n;
  auto& pts = j["k_points"] = nlohmann::json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto& k = ks[i];
    nlohmann::json u = nlohmann::json::array();
    for (std::size_t r = 0; r < k.u.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < k.u.cols(); ++c) {
        const Quaternion& q = k.u(r, c);
        row.push_back({q.w, q.x, q.y, q.z});
      }
      u.push_back(row);
    }
    pts.push_back({{"index", i}, {"q", {k.q.w, k.q.x, k.q.y, k.q.z}}, {"u", u}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace qhyp
