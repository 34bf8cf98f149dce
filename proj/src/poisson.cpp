#include "qhyp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qhyp/errors.hpp"

namespace qhyp {

namespace {

constexpr cplx I{0.0, 1.0};

RepVector generator_value(const GeneratorTerm& term, BundleWeight nu, const KElement& k) {
  const GroupContext& ctx = term.ginv.ctx();
  const double rho = ctx.rho;
  const IwasawaData iw = iwasawa(term.ginv * k.embed(ctx));
  const cplx e = std::exp((I * term.lambda - rho) * iw.H);
  return e * tau_inverse_apply(nu, iw.vkappa, term.v);
}

// Mean and stderr of the rows of an N x cols table, each row a sample.
void column_stats(const std::vector<double>& table, std::size_t rows, std::size_t cols,
                  std::vector<double>& mean, std::vector<double>& var_of_mean) {
  mean = pairwise_column_sums(table, rows, cols);
  for (auto& m : mean) m /= static_cast<double>(rows);
  std::vector<double> dev(table.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = table[r * cols + c] - mean[c];
      dev[r * cols + c] = d * d;
    }
  }
  var_of_mean = pairwise_column_sums(dev, rows, cols);
  const double denom = rows > 1 ? static_cast<double>(rows) * static_cast<double>(rows - 1) : 1.0;
  for (auto& v : var_of_mean) v /= denom;
}

std::vector<double> checked_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw InvalidArgument("radii must be non-empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw InvalidArgument("radii must be positive and increasing");
    }
  }
  return radii;
}

struct RadialNodes {
  QuadratureRule rule;
  std::vector<std::size_t> end;  // nodes [0, end[r]) lie in [0, radii[r]]
};

RadialNodes radial_nodes(const std::vector<double>& radii, const MCConfig& mc) {
  RadialNodes out;
  out.rule = composite_rule_with_breaks(radii, mc.t_panel_width, mc.panel_points);
  for (double R : radii) {
    const auto it = std::upper_bound(out.rule.nodes.begin(), out.rule.nodes.end(), R);
    out.end.push_back(static_cast<std::size_t>(std::distance(out.rule.nodes.begin(), it)));
  }
  return out;
}

}  // namespace

Section operator-(const Section& a, const Section& b) {
  if (a.nu.nu != b.nu.nu) throw DimensionMismatch("sections of different bundles");
  return Section{a.nu, [a, b](const GroupElement& g) { return a(g) - b(g); }, a.tag + " - " + b.tag};
}

// ---------------------------------------------------------------------------
// Boundary sections

BoundarySection BoundarySection::generator(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                           const GroupElement& g, const RepVector& v) {
  if (v.size() != nu.dim()) throw DimensionMismatch("generator vector has wrong dimension");
  if (g.ctx().n != ctx.n) throw DimensionMismatch("generator group element has wrong rank");
  BoundarySection f;
  f.nu_ = nu;
  f.tag_ = "generator";
  f.terms_.push_back({g, g.inverse(), s.lambda, v});
  return f;
}

BoundarySection BoundarySection::from_function(BundleWeight nu,
                                               std::function<RepVector(const KElement&)> fn,
                                               std::string tag) {
  BoundarySection f;
  f.nu_ = nu;
  f.tag_ = std::move(tag);
  f.fn_ = std::move(fn);
  return f;
}

RepVector BoundarySection::operator()(const KElement& k) const {
  if (fn_) return fn_(k);
  RepVector out(nu_);
  for (const auto& term : terms_) out += generator_value(term, nu_, k);
  return out;
}

BoundarySection BoundarySection::operator+(const BoundarySection& o) const {
  if (nu_.nu != o.nu_.nu) throw DimensionMismatch("boundary sections of different types");
  if (fn_ || o.fn_) {
    BoundarySection a = *this, b = o;
    return from_function(nu_, [a, b](const KElement& k) { return a(k) + b(k); }, "sum");
  }
  BoundarySection out = *this;
  out.tag_ = "combination";
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

BoundarySection BoundarySection::scaled(cplx a) const {
  if (fn_) {
    BoundarySection b = *this;
    return from_function(nu_, [b, a](const KElement& k) { return a * b(k); }, tag_);
  }
  BoundarySection out = *this;
  for (auto& t : out.terms_) t.v *= a;
  return out;
}

BoundarySection intertwine(const BoundarySection& f) {
  if (!f.is_generator_combination()) {
    throw InvalidArgument("the intertwiner is only available on generator combinations");
  }
  BoundarySection out = f;
  BoundarySection rebuilt;
  bool first = true;
  for (const auto& t : f.terms()) {
    const BoundarySection g = BoundarySection::generator(t.g.ctx(), f.nu(), -t.lambda, t.g, t.v);
    rebuilt = first ? g : rebuilt + g;
    first = false;
  }
  return first ? out : rebuilt;
}

double covariance_residual(const GroupContext& ctx, const BoundarySection& f, std::size_t samples,
                           std::uint64_t seed) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleStream s(seed, i);
    const KElement k = haar_k(ctx, s);
    const KElement m = random_m(ctx, s);
    const RepVector lhs = f(k * m);
    const RepVector rhs = tau_inverse_apply(f.nu(), m.q, f(k));
    worst = std::max(worst, max_abs_diff(lhs, rhs) / std::max(1.0, rhs.norm()));
  }
  return worst;
}

double section_covariance_residual(const GroupContext& ctx, const Section& F, std::size_t samples,
                                   std::uint64_t seed, double radius) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleStream s(seed, i);
    const GroupElement g = random_element(ctx, radius * s.uniform(), s);
    const KElement k = haar_k(ctx, s);
    const RepVector lhs = F(g * k.embed(ctx));
    const RepVector rhs = tau_inverse_apply(F.nu, k.q, F(g));
    worst = std::max(worst, max_abs_diff(lhs, rhs) / std::max(rhs.norm(), 1e-300));
  }
  return worst;
}

MCEstimate l2_norm2_K(const GroupContext& ctx, const BoundarySection& f, const MCConfig& mc) {
  const std::size_t N = mc.k_samples;
  std::vector<double> vals(N);
  const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(static) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    SampleStream s(mc.seed, static_cast<std::uint64_t>(i));
    vals[i] = f(haar_k(ctx, s)).norm2();
  }
  std::vector<double> mean, var;
  column_stats(vals, N, 1, mean, var);
  return {mean[0], std::sqrt(var[0])};
}

// ---------------------------------------------------------------------------
// Spherical functions and Poisson transforms

RepVector spherical_apply(const SphericalFunction& phi, const GroupElement& y, const RepVector& v) {
  const CartanData cd = cartan_radial(y);
  return phi(cd.t) * tau_inverse_apply(phi.nu(), cd.w, v);
}

RepVector spherical_apply(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                          const GroupElement& y, const RepVector& v) {
  return spherical_apply(SphericalFunction(ctx, nu, s), y, v);
}

Section poisson_generator(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                          const GroupElement& g, const RepVector& v) {
  if (v.size() != nu.dim()) throw DimensionMismatch("vector has wrong dimension");
  auto phi = std::make_shared<const SphericalFunction>(ctx, nu, s);
  const GroupElement ginv = g.inverse();
  return Section{nu, [phi, ginv, v](const GroupElement& x) { return spherical_apply(*phi, ginv * x, v); },
                 "poisson_generator"};
}

VectorEstimate poisson_quadrature(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                  const BoundarySection& f, const GroupElement& g, const MCConfig& mc) {
  const std::size_t N = mc.k_samples, d = nu.dim(), cols = 2 * d;
  const GroupElement ginv = g.inverse();
  const cplx expo = -(I * s.lambda + ctx.rho);
  std::vector<double> table(N * cols);
  const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(static) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    SampleStream st(mc.seed, static_cast<std::uint64_t>(i));
    const KElement k = haar_k(ctx, st);
    const IwasawaData iw = iwasawa(ginv * k.embed(ctx));
    const RepVector x = std::exp(expo * iw.H) * tau_matrix(nu, iw.vkappa).apply(f(k));
    for (std::size_t c = 0; c < d; ++c) {
      table[i * cols + 2 * c] = x.coords[c].real();
      table[i * cols + 2 * c + 1] = x.coords[c].imag();
    }
  }
  std::vector<double> mean, var;
  column_stats(table, N, cols, mean, var);
  VectorEstimate out;
  out.value = RepVector(nu);
  double v2 = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    out.value.coords[c] = {mean[2 * c], mean[2 * c + 1]};
    v2 += var[2 * c] + var[2 * c + 1];
  }
  out.stderr = std::sqrt(v2);
  return out;
}

namespace {

RepVector profile_with(BundleWeight nu, double rho, cplx lambda, cplx cp, cplx cm,
                       const BoundarySection& f, const BoundarySection& Uf, double t,
                       const KElement& k1, const KElement& k2) {
  RepVector a = (cp * std::exp((I * lambda - rho) * t)) * f(k1);
  a += (cm * std::exp((-I * lambda - rho) * t)) * Uf(k1);
  return tau_inverse_apply(nu, k2.q, a);
}

}  // namespace

RepVector asymptotic_profile(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                             const BoundarySection& f, const BoundarySection& Uf, double t,
                             const KElement& k1, const KElement& k2) {
  return profile_with(nu, ctx.rho, s.lambda, c_nu(ctx, nu, s), c_nu(ctx, nu, -s), f, Uf, t, k1, k2);
}

RepVector asymptotic_profile(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                             const BoundarySection& f, const BoundarySection& Uf, const GroupElement& x) {
  const CartanData cd = cartan(x);
  return asymptotic_profile(ctx, nu, s, f, Uf, cd.t, *cd.k1, *cd.k2);
}

cplx spherical_remainder(const GroupContext& ctx, BundleWeight nu, SpectralParam s, double t) {
  const cplx l = s.lambda;
  return spherical_phi(ctx, nu, s, t) - c_nu(ctx, nu, s) * std::exp((I * l - ctx.rho) * t) -
         c_nu(ctx, nu, -s) * std::exp((-I * l - ctx.rho) * t);
}

// ---------------------------------------------------------------------------
// Ball averages

double BallAverageReport::sup_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

void BallAverageReport::write_csv(std::ostream& os) const {
  os << "R,value,stderr\n" << std::setprecision(17);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    os << radii[i] << ',' << values[i] << ',' << stderrs[i] << '\n';
  }
}

std::vector<double> default_radii() { return {5.0, 10.0, 20.0, 40.0}; }

BallAverageReport ball_average(const GroupContext& ctx, const Section& F, const std::vector<double>& radii_in,
                               const MCConfig& mc) {
  const auto radii = checked_radii(radii_in);
  const RadialNodes rn = radial_nodes(radii, mc);
  const std::size_t T = rn.rule.nodes.size(), nr = radii.size(), N = std::max<std::size_t>(mc.ball_k_samples, 1);
  std::vector<GroupElement> at;
  std::vector<double> wdelta(T);
  at.reserve(T);
  for (std::size_t i = 0; i < T; ++i) {
    const double t = rn.rule.nodes[i];
    at.push_back(make_at(ctx, t));
    wdelta[i] = rn.rule.weights[i] * density(ctx, t);
  }

  std::vector<double> table(N * nr);
  const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(dynamic) if (mc.exec == Exec::parallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    SampleStream st(mc.seed, static_cast<std::uint64_t>(j));
    const GroupElement k = haar_k(ctx, st).embed(ctx);
    std::vector<double> vals(T);
    for (std::size_t i = 0; i < T; ++i) vals[i] = wdelta[i] * F(k * at[i]).norm2();
    for (std::size_t r = 0; r < nr; ++r) {
      table[j * nr + r] = pairwise_sum(std::span<const double>(vals.data(), rn.end[r])) / radii[r];
    }
  }

  std::vector<double> mean, var;
  column_stats(table, N, nr, mean, var);
  BallAverageReport rep;
  rep.radii = radii;
  rep.values = mean;
  for (double v : var) rep.stderrs.push_back(std::sqrt(v));
  rep.extrapolated_limit = rep.values.back();
  rep.stderr = rep.stderrs.back();
  for (double v : rep.values) {
    if (!std::isfinite(v)) throw QuadratureNonConvergence("ball average is not finite");
  }
  return rep;
}

BallAverageReport key_lemma_defect(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                   const GroupElement& g, const RepVector& v,
                                   const std::vector<double>& radii, const MCConfig& mc) {
  if (s.lambda.imag() != 0.0 || s.lambda.real() == 0.0) {
    throw InvalidArgument("key lemma defect needs real nonzero lambda");
  }
  const Section P = poisson_generator(ctx, nu, s, g, v);
  const auto f = BoundarySection::generator(ctx, nu, s, g, v);
  const auto Uf = intertwine(f);
  const cplx cp = c_nu(ctx, nu, s), cm = c_nu(ctx, nu, -s);
  const double rho = ctx.rho;
  const cplx l = s.lambda;
  const Section S{nu,
                  [=](const GroupElement& x) {
                    const CartanData cd = cartan(x);
                    return profile_with(nu, rho, l, cp, cm, f, Uf, cd.t, *cd.k1, *cd.k2);
                  },
                  "asymptotic_profile"};
  return ball_average(ctx, P - S, radii, mc);
}

BallAverageReport scalar_remainder_average(const GroupContext& ctx, BundleWeight nu, SpectralParam s,
                                           double v_norm2, const std::vector<double>& radii_in,
                                           const MCConfig& mc) {
  const auto radii = checked_radii(radii_in);
  const RadialNodes rn = radial_nodes(radii, mc);
  const SphericalFunction phi(ctx, nu, s);
  const cplx cp = c_nu(ctx, nu, s), cm = c_nu(ctx, nu, -s), l = s.lambda;
  std::vector<double> vals(rn.rule.nodes.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double t = rn.rule.nodes[i];
    const cplx r = phi(t) - cp * std::exp((I * l - ctx.rho) * t) - cm * std::exp((-I * l - ctx.rho) * t);
    vals[i] = rn.rule.weights[i] * density(ctx, t) * std::norm(r) * v_norm2;
  }
  BallAverageReport rep;
  rep.radii = radii;
  for (std::size_t r = 0; r < radii.size(); ++r) {
    rep.values.push_back(pairwise_sum(std::span<const double>(vals.data(), rn.end[r])) / radii[r]);
    rep.stderrs.push_back(0.0);
  }
  rep.extrapolated_limit = rep.values.back();
  return rep;
}

}  // namespace qhyp
