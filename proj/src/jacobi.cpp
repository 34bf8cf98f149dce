#include "qhyp/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "qhyp/errors.hpp"

namespace qhyp {

namespace {

constexpr double kPi = std::numbers::pi;

// Fritsch-Carlson slopes for one real channel.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1), m(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) return 3.0 * d0;
    return s;
  };
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    throw InvalidArgument("expected CSV header '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidArgument("malformed CSV cell '" + cell + "'");
      }
    }
    if (row.size() != 3) throw InvalidArgument("expected 3 CSV columns: " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

double log_density(const JacobiParams& p, double t) {
  return (2.0 * p.alpha + 1.0) * std::log(2.0 * std::sinh(t)) +
         (2.0 * p.beta + 1.0) * (std::log(2.0) + log_cosh(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile RadialProfile::analytic(std::function<cplx(double)> f, double support_radius) {
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw InvalidArgument("support radius must be finite and positive");
  }
  RadialProfile r;
  r.fn_ = std::move(f);
  r.support_ = support_radius;
  return r;
}

RadialProfile RadialProfile::sampled(std::vector<double> t, std::vector<cplx> values) {
  if (t.size() != values.size() || t.size() < 2) {
    throw InvalidArgument("sampled profile needs at least two (t, value) pairs");
  }
  if (t.front() < 0.0) throw InvalidArgument("sample abscissae must be >= 0");
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k] > t[k - 1])) throw InvalidArgument("sample abscissae must increase");
  }
  std::vector<double> re(t.size()), im(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    re[k] = values[k].real();
    im[k] = values[k].imag();
  }
  const auto mr = pchip_slopes(t, re);
  const auto mi = pchip_slopes(t, im);
  RadialProfile r;
  r.support_ = t.back();
  r.slopes_.resize(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) r.slopes_[k] = {mr[k], mi[k]};
  r.grid_ = std::move(t);
  r.values_ = std::move(values);
  return r;
}

RadialProfile RadialProfile::zero(double support_radius) {
  return analytic([](double) { return cplx(0.0); }, support_radius);
}

cplx RadialProfile::operator()(double t) const {
  t = std::abs(t);
  if (t > support_) return 0.0;
  if (grid_.empty()) return fn_ ? fn_(t) : cplx(0.0);
  if (t <= grid_.front()) return values_.front();
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const std::size_t k = std::min<std::size_t>(std::distance(grid_.begin(), it), grid_.size() - 1) - 1;
  const double h = grid_[k + 1] - grid_[k];
  const double s = (t - grid_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] + h11 * h * slopes_[k + 1];
}

double RadialProfile::sup_norm() const {
  double m = 0.0;
  if (!grid_.empty()) {
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  constexpr int kScan = 4096;
  for (int k = 0; k <= kScan; ++k) m = std::max(m, std::abs((*this)(support_ * k / kScan)));
  return m;
}

RadialProfile RadialProfile::weighted(std::function<double(double)> w) const {
  RadialProfile base = *this;
  return analytic([base, w = std::move(w)](double t) { return w(t) * base(t); }, support_);
}

void RadialProfile::write_csv(std::ostream& os, std::size_t samples) const {
  os << "t,value_re,value_im\n" << std::setprecision(17);
  auto row = [&](double t) {
    const cplx v = (*this)(t);
    os << t << ',' << v.real() << ',' << v.imag() << '\n';
  };
  if (!grid_.empty()) {
    for (double t : grid_) row(t);
    return;
  }
  samples = std::max<std::size_t>(samples, 2);
  for (std::size_t k = 0; k < samples; ++k) row(support_ * static_cast<double>(k) / (samples - 1));
}

RadialProfile RadialProfile::read_csv(std::istream& is) {
  const auto rows = read_numeric_csv(is, "t,value_re,value_im");
  std::vector<double> t;
  std::vector<cplx> v;
  for (const auto& r : rows) {
    t.push_back(r[0]);
    v.emplace_back(r[1], r[2]);
  }
  return sampled(std::move(t), std::move(v));
}

RadialProfile gaussian_bump(double sigma, double support_radius) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return RadialProfile::analytic([inv](double t) { return cplx(std::exp(-t * t * inv)); },
                                 support_radius);
}

void SpectrumTable::write_csv(std::ostream& os) const {
  if (lambda.size() != value.size()) throw DimensionMismatch("spectrum table columns differ");
  os << "lambda,value_re,value_im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    os << lambda[k] << ',' << value[k].real() << ',' << value[k].imag() << '\n';
  }
}

SpectrumTable SpectrumTable::read_csv(std::istream& is) {
  SpectrumTable s;
  for (const auto& r : read_numeric_csv(is, "lambda,value_re,value_im")) {
    s.lambda.push_back(r[0]);
    s.value.emplace_back(r[1], r[2]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Discrete spectra

double closed_form_weight(const JacobiParams& p, int k) {
  const double a = p.alpha, b = std::abs(p.beta);
  const double m = b - a - 1.0 - 2.0 * k;
  if (k < 0 || !(m > 0.0)) throw InvalidArgument("k outside the discrete set");
  const double log_d = -2.0 * (a + p.beta) * std::log(2.0) + std::lgamma(a + k + 1.0) +
                       std::lgamma(b - k) - 2.0 * std::lgamma(a + 1.0) - std::lgamma(b - a - k) -
                       std::lgamma(k + 1.0);
  return m * std::exp(log_d);
}

DiscreteSpectrum discrete_spectrum(const JacobiParams& p) {
  DiscreteSpectrum ds;
  const double a = p.alpha, b = std::abs(p.beta);
  for (int k = 0; b - a - 1.0 - 2.0 * k > 0.0; ++k) {
    ds.entries.push_back({cplx(0.0, b - a - 1.0 - 2.0 * k), 0.5 * closed_form_weight(p, k)});
  }
  return ds;
}

DiscreteSpectrum discrete_Dnu(const GroupContext& ctx, BundleWeight nu) {
  const double rho = static_cast<double>(ctx.rho);
  DiscreteSpectrum ds = discrete_spectrum(JacobiParams(rho - 2.0, nu.nu + 1.0));
  const double scale = std::pow(4.0, nu.nu);
  for (auto& e : ds.entries) e.d *= scale;
  return ds;
}

double discrete_Dnu_closed_form(const GroupContext& ctx, BundleWeight nu, int j) {
  const double rho = static_cast<double>(ctx.rho), v = nu.nu;
  const double m = v - rho + 2.0 - 2.0 * j;
  if (j < 0 || !(m > 0.0)) throw InvalidArgument("j outside the discrete set");
  const double log_d = -2.0 * (rho - v - 1.0) * std::log(2.0) + std::lgamma(rho - 1.0 + j) +
                       std::lgamma(v - j + 1.0) - 2.0 * std::lgamma(rho - 1.0) -
                       std::lgamma(j + 1.0) - std::lgamma(v - rho - j + 3.0);
  return m * std::exp(log_d);
}

cplx residue_oracle(const std::function<cplx(cplx)>& c, cplx lambda0, double radius,
                    std::size_t points) {
  std::vector<cplx> terms(points);
  for (std::size_t k = 0; k < points; ++k) {
    const cplx e = std::polar(radius, 2.0 * kPi * static_cast<double>(k) / points);
    const cplx l = lambda0 + e;
    terms[k] = e / (c(l) * c(-l));
  }
  return cplx(0.0, -1.0) * pairwise_sum(terms) / static_cast<double>(points);
}

double jacobi_density(const JacobiParams& p, double t) {
  t = std::abs(t);
  if (t == 0.0) return 2.0 * p.alpha + 1.0 > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::exp(log_density(p, t));
}

// ---------------------------------------------------------------------------
// Forward transform

JacobiForward::JacobiForward(const JacobiParams& p, RadialProfile f, ForwardOptions opt)
    : p_(p), f_(std::move(f)), opt_(opt) {
  fnorm_ = f_.sup_norm();
  levels_.push_back(build_level(0));
  levels_.push_back(build_level(1));
}

JacobiForward::Level JacobiForward::build_level(int k) const {
  Level lv;
  const double R = f_.support_radius();
  const double a = std::min(0.1, R);
  const double refine = std::ldexp(1.0, k);
  // t = u^2 on [0, a]
  const auto head = composite_rule(0.0, std::sqrt(a), std::sqrt(a) / refine, opt_.points);
  for (std::size_t i = 0; i < head.nodes.size(); ++i) {
    const double u = head.nodes[i], t = u * u;
    lv.nodes.push_back(t);
    lv.weighted_f.push_back(head.weights[i] * 2.0 * u * jacobi_density(p_, t) * f_(t));
  }
  if (R > a) {
    const auto body = composite_rule(a, R, opt_.panel_width / refine, opt_.points);
    for (std::size_t i = 0; i < body.nodes.size(); ++i) {
      const double t = body.nodes[i];
      lv.nodes.push_back(t);
      lv.weighted_f.push_back(body.weights[i] * jacobi_density(p_, t) * f_(t));
    }
  }
  return lv;
}

cplx JacobiForward::apply(const Level& lv, const JacobiFunction& phi) const {
  std::vector<cplx> terms(lv.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (lv.weighted_f[i] != 0.0) terms[i] = lv.weighted_f[i] * phi(lv.nodes[i]);
  }
  return pairwise_sum(terms);
}

cplx JacobiForward::operator()(SpectralParam s) const {
  if (fnorm_ == 0.0) return 0.0;
  const JacobiFunction phi(p_, s);
  cplx prev = apply(levels_[0], phi);
  const double tol_scale = opt_.rel_tol * (1.0 + fnorm_);
  Level extra;
  for (int k = 1; k <= opt_.max_levels; ++k) {
    const Level* lv;
    if (static_cast<std::size_t>(k) < levels_.size()) {
      lv = &levels_[k];
    } else {
      extra = build_level(k);
      lv = &extra;
    }
    const cplx cur = apply(*lv, phi);
    double scale = 0.0;
    for (std::size_t i = 0; i < lv->nodes.size(); ++i) {
      scale += std::abs(lv->weighted_f[i]) * (lv->weighted_f[i] != 0.0 ? std::abs(phi(lv->nodes[i])) : 0.0);
    }
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) break;
    if (std::abs(cur - prev) <= tol_scale * std::max(1.0, scale)) return cur;
    prev = cur;
  }
  throw QuadratureNonConvergence("forward Jacobi transform did not converge");
}

cplx jacobi_forward(const JacobiParams& p, const RadialProfile& f, SpectralParam s) {
  return JacobiForward(p, f)(s);
}

// ---------------------------------------------------------------------------
// Inverse transform

QuadratureRule spectral_rule(double lambda_max, std::size_t points) {
  if (!(lambda_max > 0.0)) throw InvalidArgument("lambda_max must be positive");
  std::vector<double> breaks;
  for (double b : {0.25, 0.5, 1.0, 2.0}) {
    if (b < lambda_max) breaks.push_back(b);
  }
  for (double b = 4.0; b < lambda_max; b += 2.0) breaks.push_back(b);
  breaks.push_back(lambda_max);
  QuadratureRule rule;
  double lo = 0.0;
  for (double hi : breaks) {
    const auto g = gauss_panel(lo, hi, points);
    rule.nodes.insert(rule.nodes.end(), g.nodes.begin(), g.nodes.end());
    rule.weights.insert(rule.weights.end(), g.weights.begin(), g.weights.end());
    lo = hi;
  }
  return rule;
}

std::vector<cplx> jacobi_inverse(const JacobiParams& p, const SpectrumFn& spectrum,
                                 const DiscreteSpectrum& ds, const std::vector<double>& ts,
                                 double lambda_max) {
  const auto rule = spectral_rule(lambda_max);
  const std::size_t m = rule.nodes.size();
  std::vector<cplx> weight(m);
  std::vector<JacobiFunction> phis;
  phis.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double l = rule.nodes[i];
    const cplx S = spectrum(cplx(l));
    phis.emplace_back(p, l);
    weight[i] = S * rule.weights[i] / (std::norm(c_ab(p, l)) * 2.0 * kPi);
  }
  std::vector<cplx> disc_weight;
  std::vector<JacobiFunction> disc_phis;
  for (const auto& e : ds.entries) {
    disc_weight.push_back(e.d * spectrum(e.lambda));
    disc_phis.emplace_back(p, e.lambda);
  }

  std::vector<cplx> out(ts.size());
  const auto n = static_cast<std::ptrdiff_t>(ts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double t = ts[j];
    std::vector<cplx> terms(m);
    for (std::size_t i = 0; i < m; ++i) terms[i] = weight[i] == 0.0 ? cplx(0.0) : weight[i] * phis[i](t);
    cplx v = pairwise_sum(terms);
    for (std::size_t k = 0; k < disc_phis.size(); ++k) v += disc_weight[k] * disc_phis[k](t);
    out[j] = v;
  }
  for (const auto& v : out) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw QuadratureNonConvergence("inverse Jacobi transform produced a non-finite value");
    }
  }
  return out;
}

cplx jacobi_inverse(const JacobiParams& p, const SpectrumFn& spectrum, const DiscreteSpectrum& ds,
                    double t, double lambda_max) {
  return jacobi_inverse(p, spectrum, ds, std::vector<double>{t}, lambda_max).front();
}

PlancherelSides plancherel_sides(const JacobiParams& p, const RadialProfile& f, double lambda_max) {
  PlancherelSides out;
  const RadialProfile f2 = RadialProfile::analytic(
      [f](double t) { return cplx(std::norm(f(t))); }, f.support_radius());
  out.geometric = JacobiForward(p, f2)(cplx(0.0, -p.rho_ab())).real();

  const JacobiForward fwd(p, f);
  const auto rule = spectral_rule(lambda_max);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double l = rule.nodes[i];
    terms[i] = rule.weights[i] * std::norm(fwd(l)) / std::norm(c_ab(p, l));
  }
  out.continuous = pairwise_sum(terms);
  for (const auto& e : discrete_spectrum(p).entries) out.discrete += e.d * std::norm(fwd(e.lambda));
  return out;
}

double plancherel_defect(const JacobiParams& p, const RadialProfile& f, double lambda_max) {
  if (f.sup_norm() == 0.0) return 0.0;
  const auto s = plancherel_sides(p, f, lambda_max);
  const double rhs = s.continuous / (2.0 * kPi) + s.discrete;
  return std::abs(s.geometric - rhs) / s.geometric;
}

// ---------------------------------------------------------------------------
// tau_nu-radial reduction

double hnu_weight(BundleWeight nu, double t) { return std::exp(-nu.nu * (std::log(4.0) + log_cosh(t))); }

HNuTransform::HNuTransform(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f,
                           ForwardOptions opt)
    : fwd_(JacobiParams(static_cast<double>(ctx.rho) - 2.0, nu.nu + 1.0),
           nu.nu == 0 ? f : f.weighted([nu](double t) { return hnu_weight(nu, t); }), opt) {}

cplx h_nu(const GroupContext& ctx, BundleWeight nu, const RadialProfile& f, SpectralParam s) {
  return HNuTransform(ctx, nu, f)(s);
}

}  // namespace qhyp
