#include "qhyp/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qhyp/errors.hpp"

namespace qhyp {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0.0) return false;
  return z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Distance from z to the nearest integer.
double integer_distance(cplx z) { return std::abs(z - std::round(z.real())); }

cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i, keep the dominant exponential in log form
  if (z.imag() > 0.0) return -I * kPi * z - std::log(-2.0 * I) + std::log(1.0 - std::exp(2.0 * I * kPi * z));
  return I * kPi * z - std::log(2.0 * I) + std::log(1.0 - std::exp(-2.0 * I * kPi * z));
}

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Power series of 2F1 for |z| < 1. Throws QuadratureNonConvergence past max_terms.
cplx series_2f1(cplx a, cplx b, cplx c, double z, std::size_t max_terms = 4000000) {
  cplx sum = 1.0, term = 1.0;
  const double bound = std::abs(a) + std::abs(b) + std::abs(c) + 2.0;
  int quiet = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    if (term == 0.0) return sum;
    sum += term;
    if (kd > bound && std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw QuadratureNonConvergence("hyp2f1: series did not converge at z=" + std::to_string(z));
}

}  // namespace

JacobiParams::JacobiParams(double a, double b) : alpha(a), beta(b) {
  if (!(a > -1.0)) throw InvalidArgument("JacobiParams: alpha must exceed -1");
}

double log_cosh(double t) {
  const double a = std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleAtNonpositiveInteger("log_gamma: pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
  return log_gamma_right(z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx zc) {
  if (is_nonpositive_integer(c)) throw ParameterPole("hyp2f1: c is a nonpositive integer");
  if (a == 0.0 || b == 0.0 || zc == 0.0) return 1.0;
  if (zc.imag() != 0.0 || !(zc.real() < 1.0))
    throw InvalidArgument("hyp2f1: argument must be real and below 1");
  const double z = zc.real();
  if (z >= -0.5) return series_2f1(a, b, c, z);

  if (z < -9.0 && integer_distance(a - b) > 1e-3) {
    // connection to 1/z
    const double w = 1.0 / z;
    const cplx lg_c = log_gamma(c);
    const cplx t1 = std::exp(lg_c + log_gamma(b - a)) * rgamma(b) * rgamma(c - a) *
                    std::exp(-a * std::log(-z)) * series_2f1(a, a - c + 1.0, a - b + 1.0, w);
    const cplx t2 = std::exp(lg_c + log_gamma(a - b)) * rgamma(a) * rgamma(c - b) *
                    std::exp(-b * std::log(-z)) * series_2f1(b, b - c + 1.0, b - a + 1.0, w);
    return t1 + t2;
  }
  // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
  return std::exp(-a * std::log(1.0 - z)) * series_2f1(a, c - b, c, z / (z - 1.0));
}

cplx c_ab(const JacobiParams& p, SpectralParam s) {
  const cplx il = I * s.lambda;
  if (is_nonpositive_integer(il)) throw SpectralPole("c_ab: Gamma(i lambda) has a pole");
  const double rho = p.rho_ab();
  const cplx d1 = (il + rho) / 2.0, d2 = (il + p.alpha - p.beta + 1.0) / 2.0;
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2)) return 0.0;
  const cplx lg = (rho - il) * std::numbers::ln2 + log_gamma(p.alpha + 1.0) + log_gamma(il) -
                  log_gamma(d1) - log_gamma(d2);
  return std::exp(lg);
}

cplx c_nu(const GroupContext& ctx, BundleWeight nu, SpectralParam s) {
  const cplx il = I * s.lambda;
  if (is_nonpositive_integer(il)) throw SpectralPole("c_nu: Gamma(i lambda) has a pole");
  const double rho = ctx.rho;
  const cplx d1 = (il + rho + static_cast<double>(nu.nu)) / 2.0;
  const cplx d2 = (il + rho - static_cast<double>(nu.nu) - 2.0) / 2.0;
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2)) return 0.0;
  const cplx lg = (rho - il) * std::numbers::ln2 + log_gamma(rho - 1.0) + log_gamma(il) -
                  log_gamma(d1) - log_gamma(d2);
  return std::exp(lg);
}

namespace {

// m = (nu - rho + 2)/2 as a double; integral iff nu and rho-2 have equal parity.
double b_index(const GroupContext& ctx, BundleWeight nu) {
  return (static_cast<double>(nu.nu) - ctx.rho + 2.0) / 2.0;
}

bool b_index_in_zplus(const GroupContext& ctx, BundleWeight nu) {
  const double m = b_index(ctx, nu);
  return m >= 0.0 && m == std::round(m);
}

// sin(pi x/2)/x with the removable singularity at 0.
cplx sin_half_pi_over(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx y = kPi * x / 2.0;
    return kPi / 2.0 * (1.0 - y * y / 6.0 + y * y * y * y / 120.0);
  }
  return std::sin(kPi * x / 2.0) / x;
}

}  // namespace

int epsilon_nu(const GroupContext& ctx, BundleWeight nu) {
  return b_index_in_zplus(ctx, nu) ? -1 : 1;
}

cplx b_nu(const GroupContext& ctx, BundleWeight nu, SpectralParam s) {
  const cplx il = I * s.lambda;
  const double rho = ctx.rho;
  const double nd = static_cast<double>(nu.nu);
  const cplx pre = std::exp((rho - il) * std::numbers::ln2 + log_gamma(rho - 1.0)) *
                   rgamma((il + rho + nd) / 2.0);
  if (b_index_in_zplus(ctx, nu)) {
    // Gamma(il)/Gamma(il/2 - m) = (-1)^m Gamma(1+il) Gamma(m+1-il/2) sin(pi il/2) / (pi il)
    const double m = b_index(ctx, nu);
    const double sign = (static_cast<long>(m) % 2 == 0) ? 1.0 : -1.0;
    return pre * sign * gamma(1.0 + il) * gamma(m + 1.0 - il / 2.0) * sin_half_pi_over(il) / kPi;
  }
  // lambda Gamma(il) = -i Gamma(1 + il)
  return pre * (-I) * gamma(1.0 + il) * rgamma((il + rho - nd - 2.0) / 2.0);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPoleGuard = 0.05;
constexpr double kCircleRadius = 0.15;
constexpr std::size_t kCirclePoints = 48;

cplx series_route(const JacobiParams& p, cplx lambda, double t) {
  const cplx il = I * lambda;
  const double rho = p.rho_ab();
  const double th = std::tanh(t);
  return std::exp(-(il + rho) * log_cosh(t)) *
         series_2f1((il + rho) / 2.0, (p.alpha - p.beta + 1.0 + il) / 2.0, p.alpha + 1.0, th * th);
}

cplx psi_route(const JacobiParams& p, cplx lambda, double t) {
  const cplx il = I * lambda;
  const double rho = p.rho_ab();
  const double sech = 1.0 / std::cosh(t);
  return std::exp((il - rho) * (log_cosh(t) + std::numbers::ln2)) *
         series_2f1((rho - il) / 2.0, (p.alpha - p.beta + 1.0 - il) / 2.0, 1.0 - il, sech * sech);
}

// Sign of lambda for which the tanh^2-series terminates, if any.
bool terminating_lambda(const JacobiParams& p, cplx lambda, cplx& chosen) {
  for (cplx l : {lambda, -lambda}) {
    const cplx il = I * l;
    if (is_nonpositive_integer((p.alpha - p.beta + 1.0 + il) / 2.0) ||
        is_nonpositive_integer((il + p.rho_ab()) / 2.0)) {
      chosen = l;
      return true;
    }
  }
  return false;
}

}  // namespace

JacobiFunction::JacobiFunction(const JacobiParams& p, SpectralParam s) : p_(p), lambda_(s.lambda) {
  cplx chosen;
  terminating_ = terminating_lambda(p_, lambda_, chosen);
  if (terminating_) lambda_ = chosen;
  connection_ok_ = integer_distance(I * lambda_) >= kPoleGuard;
  if (connection_ok_) {
    c_plus_ = c_ab(p_, lambda_);
    c_minus_ = c_ab(p_, -lambda_);
  } else if (!terminating_) {
    auto circle = std::make_shared<std::vector<JacobiFunction>>();
    circle->reserve(kCirclePoints);
    for (std::size_t j = 0; j < kCirclePoints; ++j) {
      const double th = 2.0 * kPi * (static_cast<double>(j) + 0.5) / kCirclePoints;
      circle->emplace_back(p_, lambda_ + kCircleRadius * std::exp(I * th));
    }
    circle_ = std::move(circle);
  }
}

cplx JacobiFunction::series(double t) const { return series_route(p_, lambda_, std::abs(t)); }

cplx JacobiFunction::psi(double t, bool negate) const {
  const cplx l = negate ? -lambda_ : lambda_;
  if (is_nonpositive_integer(1.0 - I * l)) throw SpectralPole("psi: 1 - i lambda is a pole");
  return psi_route(p_, l, t);
}

cplx JacobiFunction::connection(double t) const {
  if (!connection_ok_) throw SpectralPole("connection: lambda too close to a pole of c");
  return c_plus_ * psi_route(p_, lambda_, t) + c_minus_ * psi_route(p_, -lambda_, t);
}

cplx JacobiFunction::operator()(double t) const {
  t = std::abs(t);
  if (terminating_ || t == 0.0) return series(t);
  const double th = std::tanh(t);
  const double za = th * th;
  if (connection_ok_) {
    const double lam = std::abs(lambda_.real()) + std::abs(lambda_.imag());
    const double loss_series = lam * th;
    const double sech2 = 1.0 - za;
    const double loss_conn = lam * sech2 / 4.0 + std::max(p_.alpha, 0.0) * std::log(1.0 / za);
    if (za > 0.98 || loss_conn < loss_series) return connection(t);
    return series(t);
  }
  if (za <= 0.98) return series(t);
  // mean value over a circle around lambda; phi is entire in lambda
  std::vector<cplx> vals;
  vals.reserve(circle_->size());
  for (const JacobiFunction& f : *circle_) vals.push_back(f(t));
  return pairwise_sum(vals) / static_cast<double>(vals.size());
}

cplx jacobi_phi(const JacobiParams& p, SpectralParam s, double t) { return JacobiFunction(p, s)(t); }

cplx jacobi_psi(const JacobiParams& p, SpectralParam s, double t) {
  if (t < 1.0) throw InvalidArgument("jacobi_psi: requires t >= 1");
  if (is_nonpositive_integer(1.0 - I * s.lambda)) throw SpectralPole("jacobi_psi: 1 - i lambda is a pole");
  return psi_route(p, s.lambda, t);
}

SphericalFunction::SphericalFunction(const GroupContext& ctx, BundleWeight nu, SpectralParam s)
    : nu_(nu), jf_(JacobiParams(ctx.rho - 2.0, nu.nu + 1.0), s) {
  if (jf_.connection_available()) {
    c_ = c_nu(ctx, nu, s);
    c_minus_ = c_nu(ctx, nu, -s);
  }
}

cplx SphericalFunction::operator()(double t) const {
  return std::exp(static_cast<double>(nu_.nu) * log_cosh(t)) * jf_(t);
}

cplx spherical_phi(const GroupContext& ctx, BundleWeight nu, SpectralParam s, double t) {
  return SphericalFunction(ctx, nu, s)(t);
}

}  // namespace qhyp
