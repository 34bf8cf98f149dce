#include "qhyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhyp/errors.hpp"
#include "qhyp/fourier.hpp"

namespace qhyp {

namespace {

constexpr cplx I{0.0, 1.0};

void add(SuiteReport& r, std::string id, std::string anchor, double value, double tol) {
  r.checks.push_back({std::move(id), std::move(anchor), value, tol, std::isfinite(value) && value <= tol});
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

RepVector unit_vector(BundleWeight nu, std::uint64_t seed) {
  SampleStream s(seed, 0);
  RepVector v(nu);
  for (auto& c : v.coords) c = {s.normal(), s.normal()};
  return (1.0 / v.norm()) * v;
}

SuiteReport group_suite(const VerifyConfig& cfg) {
  SuiteReport r{"group", {}, {}};
  const GroupContext ctx(cfg.n);
  const int cases = 300;
  double form = 0.0, iwa = 0.0, cart = 0.0;
  int gap_bad = 0;
  for (int i = 0; i < cases; ++i) {
    SampleStream s(cfg.seed, static_cast<std::uint64_t>(i));
    GroupElement g = GroupElement::identity(ctx);
    for (int step = 0; step < 20; ++step)
      g = g * (step % 2 == 0 ? haar_k(ctx, s).embed(ctx) : make_at(ctx, 2.0 * s.uniform() - 1.0));
    form = std::max(form, g.form_residual());

    const GroupElement h = random_element(ctx, 3.0 * s.uniform(), s);
    const KElement k = haar_k(ctx, s);
    const double sh = 4.0 * s.uniform() - 2.0;
    iwa = std::max(iwa, std::abs(iwasawa(k.embed(ctx) * h * make_at(ctx, sh)).H - iwasawa(h).H - sh));

    const double t = 0.01 + 4.0 * s.uniform();
    const GroupElement x = haar_k(ctx, s).embed(ctx) * make_at(ctx, t) * haar_k(ctx, s).embed(ctx);
    const CartanData cd = cartan(x);
    const GroupElement back = cd.k1->embed(ctx) * make_at(ctx, cd.t) * cd.k2->embed(ctx);
    cart = std::max(cart, max_entry_norm(back.matrix() - x.matrix()));

    const GroupElement y = random_element(ctx, std::atanh(0.9) * s.uniform(), s);
    const double tt = 10.0 * s.uniform();
    const double gp = gap(y, haar_k(ctx, s), tt);
    if (gp < -1e-12 || gp > gap_bound(y, tt) * (1.0 + 1e-9) + 1e-14) ++gap_bad;
  }
  add(r, "form_residual", "g* J g = J, J = diag(I_n, -1)", form, 1e-9);
  add(r, "iwasawa_equivariance", "H(k g a_s) = H(g) + s", iwa, 1e-10);
  add(r, "cartan_roundtrip", "k1(g) a_{A+(g)} k2(g) = g", cart, 1e-8);
  add(r, "gap_inequality", "0 <= A+(g a_t) - H(g a_t) <= (1+|g.0|)/(1-|g.0|) e^{-2t}", gap_bad, 0.0);
  return r;
}

SuiteReport specfun_suite(const VerifyConfig& cfg) {
  SuiteReport r{"specfun", {}, {}};
  const std::pair<double, double> params[] = {{1, 1}, {1, 2}, {1, 5}, {3, 2}};
  const double h = 1e-4;
  double ode = 0.0, conn = 0.0, asym = 0.0;
  for (auto [a, b] : params) {
    const JacobiParams p(a, b);
    for (double l : {0.5, 1.0, 2.0, 5.0}) {
      const JacobiFunction f(p, l);
      const double k2 = l * l + p.rho_ab() * p.rho_ab();
      for (double t = 0.5; t <= 3.0; t += 0.25) {
        const cplx fm = f(t - h), f0 = f(t), fp = f(t + h);
        const cplx d1 = (fp - fm) / (2 * h), d2 = (fp - 2.0 * f0 + fm) / (h * h);
        const cplx res = d2 + ((2 * a + 1) / std::tanh(t) + (2 * b + 1) * std::tanh(t)) * d1 + k2 * f0;
        ode = std::max(ode, std::abs(res) / (k2 * std::sqrt(std::norm(f0) + std::norm(d1) / k2)));
      }
      for (double t = 1.0; t <= 2.0; t += 0.25) conn = std::max(conn, rel(f.connection(t), f.series(t)));
      if (l >= 2.0) {
        const cplx lc(l, -0.5);
        asym = std::max(asym, rel(std::exp((p.rho_ab() - I * lc) * 15.0) * jacobi_phi(p, lc, 15.0), c_ab(p, lc)));
      }
    }
  }
  add(r, "ode_residual", "phi'' + ((2a+1) coth t + (2b+1) tanh t) phi' + (l^2 + rho^2) phi = 0", ode, 1e-6);
  add(r, "connection_formula", "phi_l = c(l) Psi_l + c(-l) Psi_{-l}", conn, 1e-8);
  add(r, "c_asymptotics", "lim e^{(rho - i l) t} phi_l(t) = c(l), Im l < 0", asym, 1e-6);

  const GroupContext ctx(cfg.n);
  const BundleWeight nu{cfg.nu};
  double cnu = 0.0;
  for (double l : {0.5, 1.0, 2.0, 4.0})
    cnu = std::max(cnu, rel(c_nu(ctx, nu, l), std::pow(2.0, -cfg.nu) * c_ab({ctx.rho - 2.0, cfg.nu + 1.0}, l)));
  add(r, "c_nu_reduction", "c_nu = 2^{-nu} c_{rho-2,nu+1}", cnu, 1e-12);
  const cplx b0 = b_nu(ctx, nu, 1e-8);
  add(r, "b_nu_regular_at_zero", "0 < |b_nu(0)| < inf", std::isfinite(std::abs(b0)) && std::abs(b0) > 0 ? 0.0 : 1.0,
      0.0);
  return r;
}

SuiteReport jacobi_suite(const VerifyConfig&) {
  SuiteReport r{"jacobi", {}, {}};
  const auto f = gaussian_bump(0.3, 2.0);
  std::vector<double> ts;
  for (int i = 0; i <= 20; ++i) ts.push_back(0.1 * i);
  auto round_trip = [&](const JacobiParams& p) {
    const JacobiForward fwd(p, f);
    const auto back = jacobi_inverse(p, [&](cplx l) { return fwd(l); }, discrete_spectrum(p), ts, 40.0);
    double err = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) err = std::max(err, std::abs(back[i] - f(ts[i])));
    return err;
  };
  add(r, "roundtrip_continuous", "f = (1/2pi) int J f phi_l |c|^{-2} dl, (a,b) = (1,2)", round_trip({1, 2}), 1e-4);
  add(r, "roundtrip_discrete", "f = (1/2pi) int J f phi_l |c|^{-2} dl + sum d_k J f(l_k) phi_{l_k}, (a,b) = (1,5)",
      round_trip({1, 5}), 1e-3);
  add(r, "plancherel_defect", "int |f|^2 Delta = (1/2pi) int |J f|^2 |c|^{-2} dl + sum d_k |J f(l_k)|^2",
      plancherel_defect({1, 5}, f), 1e-3);
  const JacobiParams q(0.5, 4.2);
  const auto ds = discrete_spectrum(q);
  double res = 0.0;
  for (const auto& e : ds.entries) {
    const cplx oracle = residue_oracle([&](cplx l) { return c_ab(q, l); }, e.lambda);
    res = std::max(res, std::abs(oracle.real() - e.d) / e.d);
  }
  add(r, "discrete_weight_residue", "d_k = -i Res_{l_k} (c(l) c(-l))^{-1}", res, 1e-6);
  const auto dn = discrete_Dnu(GroupContext(1), BundleWeight{4});
  const double lset = dn.entries.size() == 2
                          ? std::max(std::abs(dn.entries[0].lambda - 3.0 * I), std::abs(dn.entries[1].lambda - I))
                          : 1.0;
  add(r, "discrete_set_n1_nu4", "D_nu = {i(nu - rho + 2 - 2j)} = {3i, i}", lset, 1e-12);
  return r;
}

SuiteReport poisson_suite(const VerifyConfig& cfg) {
  SuiteReport r{"poisson", {}, {}};
  const GroupContext ctx(cfg.n);
  const BundleWeight nu{cfg.nu};
  const double l = cfg.lambda;
  SampleStream s(cfg.seed, 1);
  const RepVector v = unit_vector(nu, cfg.seed);
  const GroupElement g = random_element(ctx, 0.3, s);
  add(r, "generator_covariance", "f(k m) = sigma_nu(m)^{-1} f(k)",
      covariance_residual(ctx, BoundarySection::generator(ctx, nu, l, g, v), 50, cfg.seed), 1e-10);
  add(r, "section_covariance", "F(g k) = tau_nu(k)^{-1} F(g)",
      section_covariance_residual(ctx, poisson_generator(ctx, nu, l, g, v), 50, cfg.seed), 1e-9);

  MCConfig mc;
  mc.seed = cfg.seed;
  mc.k_samples = 50000;
  const GroupElement y = random_element(ctx, 0.4, s);
  const auto q = poisson_quadrature(ctx, nu, l, BoundarySection::generator(ctx, nu, l, g, v), y, mc);
  const RepVector closed = poisson_generator(ctx, nu, l, g, v)(y);
  add(r, "poisson_of_generator", "P_l f^g_{l,v}(x) = Phi_{nu,l}(g^{-1} x) v  [in stderr units]",
      max_abs_diff(q.value, closed) / q.stderr, 4.0);

  MCConfig ball = mc;
  ball.ball_k_samples = 8;  // K-invariant integrand at g = e
  const double R = cfg.radii.back();
  const auto avg = ball_average(ctx, poisson_generator(ctx, nu, l, GroupElement::identity(ctx), v), {R}, ball);
  const double limit = 2.0 * std::norm(c_nu(ctx, nu, l));
  add(r, "ball_average_limit", "(1/R) int_{B(R)} |P_l f|^2 -> 2 |c_nu(l)|^2 |f|^2  [relative, R max]",
      std::abs(avg.values[0] / limit - 1.0), 0.03);

  double early = 0.0, late = 0.0;
  for (double t = 1.0; t <= 10.0; t += 0.25) {
    const double x = std::abs(spherical_remainder(ctx, nu, l, t)) * std::exp((ctx.rho + 2.0) * t);
    (t <= 5.5 ? early : late) = std::max(t <= 5.5 ? early : late, x);
  }
  add(r, "remainder_decay", "phi_{nu,l}(t) - c e^{(il-rho)t} - c' e^{(-il-rho)t} = O(e^{-(rho+2)t})  [late/early]",
      late / early, 2.0);
  return r;
}

SuiteReport fourier_suite(const VerifyConfig& cfg) {
  SuiteReport r{"fourier", {}, {}};
  const GroupContext ctx(cfg.n);
  const BundleWeight nu{cfg.nu};
  const auto f = gaussian_bump(0.3, 2.0);
  const RepVector v = unit_vector(nu, cfg.seed);
  const auto F = tau_radial_section(ctx, nu, f, v);
  MCConfig mc;
  mc.seed = cfg.seed;
  mc.panel_points = 16;
  mc.t_panel_width = 0.5;
  mc.ball_k_samples = 512;
  mc.outer_samples = 32;
  SampleStream s(cfg.seed, 2);
  const KElement k = haar_k(ctx, s);
  const auto est = helgason_fourier(ctx, nu, F, cfg.lambda, k, mc);
  const RepVector closed = h_nu(ctx, nu, f, cfg.lambda) * tau_inverse_apply(nu, k.q, v);
  add(r, "slice_of_radial_section", "F_nu F_v(l, k) = H_nu f(l) tau(k)^{-1} v  [in stderr units]",
      max_abs_diff(est.value, closed) / est.stderr, 4.0);

  const auto rp = radial_plancherel(ctx, nu, f, 20.0);
  add(r, "plancherel_constant", "int |F|^2 = kappa int |H_nu f|^2 |c_nu|^{-2} dl + discrete, kappa = 1/2pi",
      std::abs(2.0 * std::numbers::pi * rp.kappa - 1.0), 1e-3);
  r.extra["kappa"] = rp.kappa;

  const std::vector<double> ts{0.1, 0.5, 1.0};
  const auto back = radial_inversion(ctx, nu, f, ts, 20.0);
  double inv = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) inv = std::max(inv, std::abs(back[i] - f(ts[i])) / f.sup_norm());
  add(r, "inversion", "f(t) = (1/2pi) int H_nu f phi_{nu,l}(t) |c_nu|^{-2} dl + sum d_nu H_nu f(l_j) phi_{nu,l_j}(t)",
      inv, 0.01);

  std::vector<double> ratios;
  for (double l : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) ratios.push_back(restriction_ratio_radial(ctx, nu, f, l));
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[2] + sorted[3]);
  add(r, "restriction_uniformity", "|F_nu F(l,.)|_{L2(K)} <= C |c_nu(l)| R^{1/2} |F|  [max/median]",
      sorted.back() / median, 3.0);
  r.extra["restriction_ratios"] = ratios;

  const GroupElement g = random_element(ctx, 0.7, s);
  const auto qp = spectral_projection(ctx, nu, F, cfg.lambda, g, mc);
  const RepVector qc = spectral_projection_radial(ctx, nu, f, v, cfg.lambda, g);
  add(r, "spectral_projection", "Q_l F = |c_nu(l)|^{-2} P_l[F_nu F(l,.)]  [in stderr units]",
      max_abs_diff(qp.value, qc) / qp.stderr, 4.0);
  return r;
}

SuiteReport keylemma_suite(const VerifyConfig& cfg) {
  SuiteReport r{"keylemma", {}, {}};
  const GroupContext ctx(cfg.n);
  const BundleWeight nu{cfg.nu};
  const RepVector v = unit_vector(nu, cfg.seed);
  MCConfig mc;
  mc.seed = cfg.seed;
  mc.ball_k_samples = 8;  // K-invariant integrand at g = e
  const auto d = key_lemma_defect(ctx, nu, cfg.lambda, GroupElement::identity(ctx), v, cfg.radii, mc);
  int rises = 0;
  for (std::size_t i = 1; i < d.values.size(); ++i)
    if (d.values[i] >= d.values[i - 1]) ++rises;
  const double limit = 2.0 * std::norm(c_nu(ctx, nu, cfg.lambda)) * v.norm2();
  add(r, "defect_monotone", "(1/R) int_{B(R)} |P_l f - S_l f|^2 decreasing in R", rises, 0.0);
  add(r, "defect_vanishes", "(1/R) int_{B(R)} |P_l f - S_l f|^2 -> 0  [relative to 2|c_nu|^2 |v|^2, R max]",
      d.values.back() / limit, 0.01);
  r.extra["R"] = d.radii;
  r.extra["defect"] = d.values;
  return r;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json SuiteReport::to_json(const VerifyConfig& cfg) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["config"] = {{"n", cfg.n}, {"nu", cfg.nu}, {"lambda", cfg.lambda}, {"R", cfg.radii}, {"seed", cfg.seed}};
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"id", c.id}, {"anchor", c.anchor}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  if (!extra.empty()) j["data"] = extra;
  j["pass"] = pass();
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group", "specfun", "jacobi", "poisson", "fourier", "keylemma"};
  return names;
}

SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "group") return group_suite(cfg);
  if (name == "specfun") return specfun_suite(cfg);
  if (name == "jacobi") return jacobi_suite(cfg);
  if (name == "poisson") return poisson_suite(cfg);
  if (name == "fourier") return fourier_suite(cfg);
  if (name == "keylemma") return keylemma_suite(cfg);
  throw InvalidArgument("unknown suite: " + name);
}

nlohmann::json verify_report(const std::string& name, const VerifyConfig& cfg) {
  if (name != "all") return run_suite(name, cfg).to_json(cfg);
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = "all";
  auto& arr = j["suites"] = nlohmann::json::array();
  bool ok = true;
  for (const auto& s : suite_names()) {
    arr.push_back(run_suite(s, cfg).to_json(cfg));
    ok = ok && arr.back()["pass"].get<bool>();
  }
  j["pass"] = ok;
  return j;
}

}  // namespace qhyp
